"""
Artifact Store Module
Reads and writes group, presentation, job and sentence files
"""
import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from exceptions import ArtifactError
from fo_syntax import Formula, parse, render
from group_kernel import (Group, GroupTable, Permutation, PermGroup,
                          Presentation, Word)
from sentence_synth import DescriptionJob, Variant

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Atomic writes
# ---------------------------------------------------------------------------

def write_atomic(path: str, text: str):
    """Write text to path via a temporary file in the same directory and a rename"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as out:
            out.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
    logger.debug(f"Wrote {path}")


def dump_json(data: Dict[str, Any]) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **data}, indent=2, sort_keys=False) + "\n"


def write_json(path: str, data: Dict[str, Any]):
    write_atomic(path, dump_json(data))


def write_frame(frame: pd.DataFrame, path: str):
    """Write a DataFrame as CSV or JSON records depending on the extension"""
    if path.endswith(".json"):
        records = json.loads(frame.to_json(orient="records"))
        write_json(path, {"records": records})
    else:
        write_atomic(path, frame.to_csv(index=False))


def _read_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise ArtifactError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ArtifactError(f"{path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ArtifactError(f"{path} must hold a JSON object")
    return data


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

def parse_generator(spec: Sequence, degree: int) -> Permutation:
    """A list of cycles, or a flat integer list meaning a single cycle"""
    if spec and all(isinstance(x, int) for x in spec):
        spec = [spec]
    try:
        return Permutation.from_cycles(spec, degree)
    except (TypeError, ValueError) as e:
        raise ArtifactError(f"bad generator {spec!r}: {e}")


def group_from_dict(data: Dict[str, Any], name: str = "") -> Group:
    """
    Build a group from its file representation

    Args:
        data: {"kind": "perm", "degree", "generators"} or {"kind": "table", "order", "table"}
        name: Fallback name when the data carries none

    Returns:
        PermGroup or GroupTable
    """
    kind = data.get("kind")
    name = data.get("name", name)
    if kind == "perm":
        if "degree" not in data or "generators" not in data:
            raise ArtifactError("perm group needs 'degree' and 'generators'")
        try:
            degree = int(data["degree"])
            gens = [parse_generator(g, degree) for g in data["generators"]]
        except (TypeError, ValueError) as e:
            raise ArtifactError(f"bad perm group: {e}")
        return PermGroup(degree, gens, name=name)
    if kind == "table":
        table = data.get("table")
        if table is None:
            raise ArtifactError("table group needs 'table'")
        if "order" in data and int(data["order"]) != len(table):
            raise ArtifactError(f"order {data['order']} does not match a {len(table)}-row table")
        return GroupTable(table, name=name)
    raise ArtifactError(f"unknown group kind {kind!r}")


def group_to_dict(group: Group) -> Dict[str, Any]:
    if isinstance(group, PermGroup):
        return {
            "kind": "perm",
            "name": group.name,
            "degree": group.degree,
            "generators": [[list(c) for c in g.cycles()] for g in group.generators],
        }
    return {
        "kind": "table",
        "name": group.name,
        "order": group.order,
        "table": group.table.tolist(),
    }


def load_group(path: str) -> Group:
    name = os.path.splitext(os.path.basename(path))[0]
    group = group_from_dict(_read_json(path), name=name)
    logger.debug(f"Loaded group {group.name} from {path}")
    return group


def save_group(group: Group, path: str):
    write_json(path, group_to_dict(group))


# ---------------------------------------------------------------------------
# Presentations and jobs
# ---------------------------------------------------------------------------

def presentation_from_dict(data: Dict[str, Any]) -> Presentation:
    """{"generators": k, "relators": [[[j, s], ...], ...]}"""
    try:
        relators = tuple(Word(tuple((int(j), int(s)) for j, s in r)) for r in data["relators"])
        return Presentation(int(data["generators"]), relators)
    except KeyError as e:
        raise ArtifactError(f"presentation is missing {e}")
    except (TypeError, ValueError) as e:
        raise ArtifactError(f"bad presentation: {e}")


def presentation_to_dict(presentation: Presentation, source: str = "") -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "generators": presentation.generator_count,
        "relators": [[[j, s] for j, s in r.letters] for r in presentation.relators],
    }
    if source:
        data["source"] = source
    return data


def load_presentation(path: str) -> Presentation:
    return presentation_from_dict(_read_json(path))


def _resolve(value: Union[str, Dict[str, Any]], base: str) -> Dict[str, Any]:
    if isinstance(value, str):
        return _read_json(os.path.join(base, value))
    return value


def job_from_dict(data: Dict[str, Any], base: str = ".", name: str = "") -> DescriptionJob:
    """
    Build a DescriptionJob; "presentation" and "group" are file paths
    (relative to base) or inline objects, "v" is an integer or "auto"
    """
    for key in ("presentation", "group", "assignment"):
        if key not in data:
            raise ArtifactError(f"job is missing {key!r}")
    presentation = presentation_from_dict(_resolve(data["presentation"], base))
    group_data = _resolve(data["group"], base)
    group_name = data["group"] if isinstance(data["group"], str) else ""
    target = group_from_dict(group_data, name=os.path.splitext(os.path.basename(group_name))[0])

    v = data.get("v", "auto")
    if v == "auto":
        v = None
    try:
        if isinstance(target, PermGroup):
            assignment: List[Any] = [parse_generator(g, target.degree) for g in data["assignment"]]
        else:
            assignment = [int(x) for x in data["assignment"]]
        return DescriptionJob(
            presentation=presentation,
            target=target,
            assignment=assignment,
            v=None if v is None else int(v),
            variant=Variant(data.get("variant", "simple")),
            min_order=int(data.get("min_order", 3)),
            name=data.get("name", name),
        )
    except (TypeError, ValueError) as e:
        raise ArtifactError(f"bad job: {e}")


def load_job(path: str) -> DescriptionJob:
    name = os.path.splitext(os.path.basename(path))[0]
    return job_from_dict(_read_json(path), base=os.path.dirname(os.path.abspath(path)), name=name)


# ---------------------------------------------------------------------------
# Sentences
# ---------------------------------------------------------------------------

def load_sentence(path: str) -> Formula:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse(handle.read())
    except OSError as e:
        raise ArtifactError(f"cannot read {path}: {e}")


def save_sentence(formula: Formula, path: str, comments: Optional[Sequence[str]] = None):
    """One formula per file, optional leading ';' comment lines"""
    header = "".join(f"; {line}\n" for line in (comments or []))
    write_atomic(path, header + render(formula) + "\n")
