"""JSON scenario and algebra files.

Exact numbers are written as integers or ``"p/q"`` strings.  A scenario file
looks like::

    {
      "schema": "fatlab-scenario", "version": 1,
      "name": "hopf", "description": "...",
      "k": "su(2)",
      "h": {"embed": "diagonal_torus", "algebra": "t(1)"},
      "g": "h",
      "lambda": "identity",
      "connection": "canonical",
      "l": "zero"
    }

``k`` is an algebra tag (``"su(3)+t(1)"``, ``"g2"``).  ``h`` is a
subalgebra of ``k`` and ``l`` a subalgebra of ``g``; both accept
``{"embed": kind, "algebra": tag}`` (with ``"elements"`` for
``diagonal_torus`` or ``"matrix"`` for ``custom``), ``{"span": [[...]]}`` in
basis coordinates, or the words ``"zero"`` and ``"all"``.  ``g`` is ``"h"``
(the intrinsic algebra of ``h``), ``"k"``, or a tag.  ``lambda`` is
``"identity"``, ``"inclusion"`` or ``{"matrix": [[...]]}`` of shape
``dim g x dim h``.

An algebra file gives either ``{"algebra": tag}`` or raw data::

    {"schema": "fatlab-algebra", "version": 1, "name": "...",
     "dim": 3, "brackets": [[i, j, k, "c"], ...], "form": [[...], ...]}

where each bracket entry sets the coefficient of ``e_k`` in ``[e_i, e_j]``.
Entries are taken literally (antisymmetry is not filled in), so broken data
survives loading and shows up in the audit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .exact import frac, vec
from .fatness import BundleScenario
from .homspace import canonical_connection, make_pair
from .liealg import AlgebraError, LieAlgebra, check_algebra, parse_algebra
from .subalg import Subalgebra, SubalgebraError, embed, full, span_subalgebra, zero

SCENARIO_SCHEMA = "fatlab-scenario"
ALGEBRA_SCHEMA = "fatlab-algebra"


class ScenarioError(ValueError):
    """The file is malformed or describes inconsistent data."""


@dataclass(eq=False)
class LoadedScenario:
    name: str
    description: str
    k: LieAlgebra
    h: Subalgebra
    g: LieAlgebra
    bundle: BundleScenario
    data: dict


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc


def _algebra(tag, scale=1) -> LieAlgebra:
    if not isinstance(tag, str):
        raise ScenarioError(f"algebra tag must be a string, got {tag!r}")
    try:
        alg = parse_algebra(tag)
    except AlgebraError as exc:
        raise ScenarioError(str(exc)) from exc
    return alg if scale == 1 else alg.with_form(frac(scale))


def _matrix(rows) -> list:
    try:
        return [vec(r) for r in rows]
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad exact matrix: {exc}") from exc


def _subalgebra(spec, ambient: LieAlgebra, what: str) -> Subalgebra:
    try:
        if spec == "zero":
            return zero(ambient)
        if spec == "all":
            return full(ambient)
        if isinstance(spec, dict) and "span" in spec:
            return span_subalgebra(ambient, _matrix(spec["span"]))
        if isinstance(spec, dict) and "embed" in spec:
            kind = spec["embed"]
            sub = _algebra(spec["algebra"]) if "algebra" in spec else None
            if sub is None and kind != "custom":
                raise ScenarioError(f"{what}: embedding {kind!r} needs an algebra")
            matrix = _matrix(spec["matrix"]) if "matrix" in spec else None
            return embed(kind, sub, ambient, matrix=matrix, elements=spec.get("elements"))
    except SubalgebraError as exc:
        raise ScenarioError(f"{what}: {exc}") from exc
    raise ScenarioError(f"{what}: unrecognised subalgebra specification {spec!r}")


def build_scenario(data: dict, form_scale=1) -> LoadedScenario:
    """Construct every object of a scenario; ``form_scale`` rescales the forms of ``k`` and ``g``."""
    if data.get("schema") != SCENARIO_SCHEMA:
        raise ScenarioError(f"expected schema {SCENARIO_SCHEMA!r}")
    if data.get("version") != 1:
        raise ScenarioError(f"unsupported scenario version {data.get('version')!r}")
    if data.get("connection", "canonical") != "canonical":
        raise ScenarioError("only canonical connections are supported")
    for key in ("k", "h", "g", "l"):
        if key not in data:
            raise ScenarioError(f"scenario lacks {key!r}")
    k = _algebra(data["k"], form_scale)
    audit = check_algebra(k)
    if not audit:
        raise ScenarioError(f"k fails its audit: {audit.identity} at {audit.indices}")
    h = _subalgebra(data["h"], k, "h")
    try:
        pair = make_pair(k, h)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    gspec = data["g"]
    if gspec == "h":
        g = h.own_algebra
    elif gspec == "k":
        g = k
    else:
        g = _algebra(gspec, form_scale)
    lam = data.get("lambda", "identity")
    if isinstance(lam, dict):
        if "matrix" not in lam:
            raise ScenarioError("lambda object needs a 'matrix'")
        lam = _matrix(lam["matrix"])
    try:
        conn = canonical_connection(pair, g, lam)
    except ValueError as exc:
        raise ScenarioError(f"lambda: {exc}") from exc
    l = _subalgebra(data["l"], g, "l")
    name = data.get("name", "")
    bundle = BundleScenario(pair, conn, l, name=name)
    return LoadedScenario(name, data.get("description", ""), k, h, g, bundle, data)


def load_scenario(path, form_scale=1) -> LoadedScenario:
    return build_scenario(read_json(path), form_scale)


def algebra_from_data(data: dict) -> LieAlgebra:
    if "algebra" in data:
        return _algebra(data["algebra"])
    if data.get("schema") != ALGEBRA_SCHEMA:
        raise ScenarioError(f"expected schema {ALGEBRA_SCHEMA!r} or an 'algebra' tag")
    try:
        n = int(data["dim"])
        form = _matrix(data["form"])
        if len(form) != n or any(len(r) != n for r in form):
            raise ScenarioError(f"form must be {n} x {n}")
        structure: dict = {}
        for entry in data.get("brackets", []):
            i, j, kk, c = entry
            if not all(0 <= x < n for x in (i, j, kk)):
                raise ScenarioError(f"bracket index out of range in {entry!r}")
            structure.setdefault((i, j), {})[kk] = frac(c)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"malformed algebra data: {exc}") from exc
    return LieAlgebra(structure, form, name=data.get("name"))


def algebras_in_file(data: dict) -> list[tuple[str, LieAlgebra]]:
    """The algebras a file names: the raw algebra, or ``k``, ``h`` and ``g`` of a scenario."""
    if data.get("schema") == SCENARIO_SCHEMA:
        k = _algebra(data.get("k"))
        out = [("k", k)]
        h = _subalgebra(data.get("h"), k, "h")
        out.append(("h", h.own_algebra))
        gspec = data.get("g")
        if gspec not in ("h", "k"):
            out.append(("g", _algebra(gspec)))
        return out
    return [(data.get("name") or data.get("algebra") or "algebra", algebra_from_data(data))]
