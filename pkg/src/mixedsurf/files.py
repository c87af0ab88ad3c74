"""Data file formats: group files and surface files.

Group file (JSON, UTF-8) -- field names are part of the format contract::

    {
      "name":        "...",                 # free-form label
      "claimed_id":  "G(64,92)",            # informational database id
      "degree":      64,
      "generators":  [[...], ...],          # 1-indexed image sequences
      "fingerprint": { ... },               # expected GroupFingerprint values
      "provenance":  "free text: oracle + date"
    }

Generators are addressed in word expressions as g1, g2, ... in file order.

Surface file (JSON, UTF-8)::

    {
      "name":          "family1",
      "group_file":    "g64.json",          # path relative to this file
      "g0_generators": ["g1", ...],         # words generating G0
      "tau_prime":     "g5",                # word for tau' (outside G0)
      "vector":        ["g1", ...],         # defining generating vector for G0
      "type":          "[0;2^5]",
      "extra_automorphisms": null | {
          "group_file": "h768.json",
          "vector":     ["...", "...", "..."] | "search"   # a [0;2,3,8] vector
      }
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .covering import CoverType, parse_cover_type, search_generating_vectors
from .errors import InputParseError, MismatchError, MixedSurfError, ValidationError
from .perm import (DEFAULT_CLOSURE_BUDGET, FiniteGroup, GroupFingerprint,
                   Permutation, closure, fingerprint)
from .surface import SurfaceData, assemble_surface
from .words import evaluate_word_index, parse_word

GROUP_FIELDS = ("name", "claimed_id", "degree", "generators", "fingerprint", "provenance")


@dataclass(frozen=True)
class GroupFile:
    name: str
    claimed_id: str
    degree: int
    generators: tuple[Permutation, ...]
    fingerprint: GroupFingerprint
    provenance: str
    path: Path | None = None


def _load_json(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path}: invalid JSON: {exc}") from exc


def load_group_record(path: str | Path) -> GroupFile:
    path = Path(path)
    raw = _load_json(path)
    missing = [f for f in GROUP_FIELDS if f not in raw]
    if missing:
        raise InputParseError(f"{path}: missing group-file fields {missing}")
    try:
        degree = int(raw["degree"])
        gens = []
        for row in raw["generators"]:
            images = tuple(int(x) for x in row)
            if len(images) != degree:
                raise InputParseError(
                    f"{path}: generator has {len(images)} images, expected {degree}")
            try:
                gens.append(Permutation(images))
            except ValidationError as exc:
                raise InputParseError(f"{path}: {exc}") from exc
        fp = GroupFingerprint.from_dict(raw["fingerprint"])
    except (TypeError, KeyError, ValueError) as exc:
        raise InputParseError(f"{path}: malformed group file: {exc}") from exc
    if not gens:
        raise InputParseError(f"{path}: group file lists no generators")
    return GroupFile(str(raw["name"]), str(raw["claimed_id"]), degree, tuple(gens),
                     fp, str(raw["provenance"]), path)


def realize_group(record: GroupFile, budget: int = DEFAULT_CLOSURE_BUDGET) -> FiniteGroup:
    return closure(record.generators, budget=budget)


def verify_group(record: GroupFile, group: FiniteGroup) -> GroupFingerprint:
    """Recompute the fingerprint and compare with the file's expectation."""
    computed = fingerprint(group)
    if computed != record.fingerprint:
        raise MismatchError(
            f"fingerprint mismatch for {record.name}: computed {computed}, "
            f"file claims {record.fingerprint}")
    return computed


def load_group(path: str | Path, verify: bool = True,
               budget: int = DEFAULT_CLOSURE_BUDGET) -> tuple[FiniteGroup, GroupFile]:
    record = load_group_record(path)
    group = realize_group(record, budget=budget)
    if verify:
        verify_group(record, group)
    return group, record


def save_group_file(path: str | Path, name: str, claimed_id: str, group: FiniteGroup,
                    provenance: str):
    payload = {
        "name": name,
        "claimed_id": claimed_id,
        "degree": group.degree,
        "generators": [list(g.images) for g in group.generators],
        "fingerprint": fingerprint(group).as_dict(),
        "provenance": provenance,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_presentation_record(path: str | Path):
    """Presentation file: {"generators": [symbols], "relators": [word strings]}."""
    from .words import Presentation

    path = Path(path)
    raw = _load_json(path)
    for field in ("generators", "relators"):
        if field not in raw:
            raise InputParseError(f"{path}: missing presentation field {field!r}")
    try:
        return Presentation.parse(tuple(str(s) for s in raw["generators"]),
                                  [str(w) for w in raw["relators"]])
    except (ValidationError, TypeError) as exc:
        raise InputParseError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class ExtraBlock:
    group_file: str
    vector: tuple[str, str, str] | None   # None means "search"


@dataclass(frozen=True)
class SurfaceFile:
    name: str
    group_file: str
    g0_generators: tuple[str, ...]
    tau_prime: str
    vector: tuple[str, ...]
    cover_type: CoverType
    extra: ExtraBlock | None
    path: Path | None = None


def load_surface_record(path: str | Path) -> SurfaceFile:
    path = Path(path)
    raw = _load_json(path)
    required = ("name", "group_file", "g0_generators", "tau_prime", "vector", "type")
    missing = [f for f in required if f not in raw]
    if missing:
        raise InputParseError(f"{path}: missing surface-file fields {missing}")
    try:
        ctype = parse_cover_type(str(raw["type"]))
    except ValidationError as exc:
        raise InputParseError(f"{path}: {exc}") from exc
    extra = None
    if raw.get("extra_automorphisms"):
        block = raw["extra_automorphisms"]
        if "group_file" not in block or "vector" not in block:
            raise InputParseError(f"{path}: malformed extra_automorphisms block")
        vec = block["vector"]
        if vec == "search":
            vec = None
        else:
            vec = tuple(str(w) for w in vec)
            if len(vec) != 3:
                raise InputParseError(f"{path}: extra-automorphism vector needs 3 words")
        extra = ExtraBlock(str(block["group_file"]), vec)
    return SurfaceFile(str(raw["name"]), str(raw["group_file"]),
                       tuple(str(w) for w in raw["g0_generators"]),
                       str(raw["tau_prime"]), tuple(str(w) for w in raw["vector"]),
                       ctype, extra, path)


def save_surface_file(path: str | Path, record: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=1)
        fh.write("\n")


def generator_alphabet(group: FiniteGroup) -> dict[str, int]:
    return {f"g{i + 1}": group.index_of(g) for i, g in enumerate(group.generators)}


def resolve_word(group: FiniteGroup, text: str) -> int:
    """Element index of a word written in the group file's g1..gk symbols."""
    assignment = generator_alphabet(group)
    word = parse_word(text, assignment.keys())
    return evaluate_word_index(group, word, assignment)


def _resolve_path(base: Path | None, rel: str) -> Path:
    p = Path(rel)
    if p.is_absolute() or base is None:
        return p
    return base.parent / p


def build_surface(spec: str | Path | SurfaceFile, verify: bool = True,
                  closure_budget: int = DEFAULT_CLOSURE_BUDGET,
                  parallel: int = 1, use_extra: bool = True) -> SurfaceData:
    """Load a surface file and assemble the full SurfaceData pipeline.

    ``use_extra=False`` ignores the extra-automorphism block, forcing the
    covering group down to G0.
    """
    record = spec if isinstance(spec, SurfaceFile) else load_surface_record(spec)
    G, _ = load_group(_resolve_path(record.path, record.group_file),
                      verify=verify, budget=closure_budget)
    seeds = [resolve_word(G, w) for w in record.g0_generators]
    tau_prime = resolve_word(G, record.tau_prime)
    vector = [resolve_word(G, w) for w in record.vector]

    h_group = None
    h_vector = None
    if use_extra and record.extra is not None:
        h_group, _ = load_group(_resolve_path(record.path, record.extra.group_file),
                                verify=verify, budget=closure_budget)
        if record.extra.vector is not None:
            h_vector = tuple(resolve_word(h_group, w) for w in record.extra.vector)
        else:
            h_vector = _search_matching_vector(h_group, G, seeds, tau_prime, vector,
                                               record.cover_type, parallel)
    return assemble_surface(G, seeds, tau_prime, vector, record.cover_type,
                            h_group=h_group, h_vector=h_vector, parallel=parallel)


def _search_matching_vector(h_group: FiniteGroup, G: FiniteGroup, seeds, tau_prime,
                            vector, cover_type: CoverType, parallel: int):
    """First [0;2,3,8] vector of H whose induced vector transports onto the
    surface's defining vector."""
    candidates = search_generating_vectors(h_group, CoverType(0, (2, 3, 8)))
    for cand in candidates:
        try:
            assemble_surface(G, seeds, tau_prime, vector, cover_type,
                             h_group=h_group, h_vector=cand.entries, parallel=parallel)
        except MixedSurfError:
            continue
        return cand.entries
    raise ValidationError(
        "no [0;2,3,8] vector of the extra-automorphism group induces the "
        "surface's defining vector")
