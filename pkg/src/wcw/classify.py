"""End-to-end classification of simple U_chi(W_l)-modules for one p-character.

The driver truncates chi to the smallest W_k that sees it, reads off the
height, builds the relevant induced modules, tests them for simplicity,
groups them into isomorphism classes and compares the outcome with a
fixed table of predicted counts and dimensions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .gf import Field, NotSplit, format_element
from .modtools import (TooLarge, Verdict, hom_space, intertwiner_candidate, is_irreducible,
                       quotient, socle_and_maximal, submodule_rep)
from .rep import Representation
from .verma import InducedModule, build_height_r, build_verma, lambda_set
from .witt import NoVanishing, PChar, ShapeMismatch, classify_scenario, height, parse_scenario

SCHEMA = "wcw-report/1"


class UnsupportedRegime(ValueError):
    pass


class UnknownScenario(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    scenario: str
    classes: int
    dims: tuple[int, ...]  # sorted
    anchor: str

    def to_json(self) -> dict:
        return {"scenario": self.scenario, "classes": self.classes,
                "dims": list(self.dims), "anchor": self.anchor}


def expectation_for(p: int, ell: int, scenario: str) -> Expectation:
    """Predicted classes and dimensions; a lookup table, never computed."""
    try:
        kind, r = parse_scenario(scenario)
    except ValueError as exc:
        raise UnknownScenario(str(exc)) from exc
    verma = p ** (ell + 1)
    if kind == "height-minus-one":
        # trivial module, the head of Z(p-1), and Z(1), ..., Z(p-2)
        return Expectation(kind, p, tuple(sorted([1, p - 1] + [p] * (p - 2))),
                           "height -1: trivial, (p-1)-dimensional and p-dimensional simples")
    if kind == "height0":
        if ell == 0:
            return Expectation(kind, p - 1, (p,) * (p - 1),
                               "height 0 over W: Z(0) = Z(p-1), all Vermas simple")
        return Expectation(kind, 1, (verma,), "height 0: every Verma simple, all isomorphic")
    if kind == "height1-a":
        if ell == 0:
            raise UnknownScenario("height1-a needs ell >= 1")
        return Expectation(kind, 1, (verma,),
                           "height 1, chi(e_0 t^l) = 0: every Verma simple, all isomorphic")
    if kind == "height1-b":
        return Expectation(kind, p, (verma,) * p,
                           "height 1, chi(e_0 t^l) != 0: Vermas simple, pairwise non-isomorphic")
    if not 1 < r < p - 1:
        raise UnknownScenario(f"heightr needs 1 < r < p-1, got r={r}")
    s = r // 2
    return Expectation(f"heightr({r})", 1, (p ** ((ell + 1) * (s + 1)),),
                       "height r: unique simple, induced from W_(s)")


def reduce_by_truncation(chi: PChar) -> tuple[int, PChar]:
    """(k, psi): k is the top t-degree chi sees (0 for chi = 0), psi = chi on W_k."""
    k = max((b.j for b in chi.values), default=0)
    return k, chi.restrict(k)


@dataclass
class ModuleEntry:
    label: str
    dim: int
    verdict: Verdict
    module: Representation = dc_field(repr=False)
    construction: str = "verma"
    lam: str | None = None
    schur_dim: int | None = None

    def to_json(self) -> dict:
        out = {"label": self.label, "dim": self.dim, "construction": self.construction,
               "lambda": self.lam, "schur_dim": self.schur_dim}
        out.update(self.verdict.to_json())
        out.pop("witness_basis", None)
        return out


@dataclass
class Report:
    input: dict
    truncation: dict
    field: dict
    height: int
    scenario: str
    modules: list[ModuleEntry]
    classes: list[list[str]]
    evidence: list[dict]
    expectation: Expectation
    notes: list[str] = dc_field(default_factory=list)

    @property
    def computed_dims(self) -> tuple[int, ...]:
        dims = {m.label: m.dim for m in self.modules}
        return tuple(sorted(dims[c[0]] for c in self.classes))

    @property
    def match(self) -> bool:
        return (len(self.classes) == self.expectation.classes
                and self.computed_dims == self.expectation.dims)

    def to_json(self) -> dict:
        dims = {m.label: m.dim for m in self.modules}
        return {
            "schema": SCHEMA,
            "input": self.input,
            "truncation": self.truncation,
            "field": self.field,
            "height": self.height,
            "scenario": self.scenario,
            "modules": [m.to_json() for m in self.modules],
            "classes": [{"members": c, "dim": dims[c[0]]} for c in self.classes],
            "evidence": self.evidence,
            "expectation": self.expectation.to_json(),
            "computed": {"classes": len(self.classes), "dims": list(self.computed_dims)},
            "match": self.match,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        F = self.field
        lines = [
            f"p={self.input['p']} ell={self.input['ell']} field=F_{F['p']}^{F['m']} "
            f"height={self.height} scenario={self.scenario}",
            f"truncated to W_{self.truncation['k']} ({self.truncation['steps']} step(s))",
            "",
            f"{'module':<22}{'dim':>6}  {'verdict':<22}{'schur':>6}",
        ]
        for m in self.modules:
            schur = "-" if m.schur_dim is None else str(m.schur_dim)
            lines.append(f"{m.label:<22}{m.dim:>6}  {m.verdict.tag:<22}{schur:>6}")
        lines.append("")
        for k, c in enumerate(self.classes):
            lines.append(f"class {k}: {', '.join(c)}")
        e = self.expectation
        lines.append("")
        lines.append(f"expected {e.classes} classes, dims {list(e.dims)}")
        lines.append(f"computed {len(self.classes)} classes, dims {list(self.computed_dims)}")
        lines.append(f"match: {'yes' if self.match else 'NO'}")
        return "\n".join(lines)


# --- driver ---------------------------------------------------------------

def _semisimple_pieces(Q: Representation, seed: int, label: str) -> list[tuple[Representation, Verdict, str]]:
    """Split a semisimple module into simples by following Norton witnesses."""
    v = is_irreducible(Q, seed)
    if v.tag != "ReducibleWithWitness":
        return [(Q, v, label)]
    W = v.witness
    return (_semisimple_pieces(submodule_rep(Q, W), seed, f"{label}.sub")
            + _semisimple_pieces(quotient(Q, W), seed, f"{label}.quo"))


def _schur(M: Representation, bound: int) -> int | None:
    try:
        return hom_space(M, M, bound).dimension
    except TooLarge:
        return None


def _group(entries: list[ModuleEntry], bound: int) -> tuple[list[list[str]], list[dict]]:
    classes: list[list[ModuleEntry]] = []
    evidence: list[dict] = []
    for e in entries:
        placed = False
        for cls in classes:
            rep = cls[0]
            if rep.dim != e.dim:
                continue
            ev = {"pair": [rep.label, e.label]}
            iso = None
            if isinstance(rep.module, InducedModule) and isinstance(e.module, InducedModule):
                cand = intertwiner_candidate(rep.module, e.module)
                if cand:
                    ev.update(kind="intertwiner", exponent=cand.exponent)
                    iso = True
                else:
                    ev["intertwiner"] = cand.reason
            if iso is None:
                try:
                    d = hom_space(e.module, rep.module, bound).dimension
                    ev.update(kind="hom", dimension=d)
                    iso = d > 0
                except TooLarge as exc:
                    ev.update(kind="undecided", reason=str(exc))
                    iso = False
            evidence.append(ev)
            if iso:
                cls.append(e)
                placed = True
                break
        if not placed:
            classes.append([e])
    return [[m.label for m in c] for c in classes], evidence


def _vermas(psi: PChar, seed: int, cache_dir, bound: int) -> list[ModuleEntry]:
    out = []
    for lam in lambda_set(psi):
        M = build_verma(psi, lam, cache_dir)
        v = is_irreducible(M, seed)
        out.append(ModuleEntry(M.label, M.dim, v, M, "verma", format_element(lam),
                               _schur(M, bound) if v.irreducible else None))
    return out


def _heads(psi: PChar, seed: int, cache_dir, bound: int) -> list[ModuleEntry]:
    """Simple heads of the Vermas (used when some Vermas are reducible)."""
    out = []
    for lam in lambda_set(psi):
        M = build_verma(psi, lam, cache_dir)
        v = is_irreducible(M, seed)
        if v.irreducible:
            out.append(ModuleEntry(M.label, M.dim, v, M, "verma", format_element(lam),
                                   _schur(M, bound)))
            continue
        soc, rad = socle_and_maximal(M)
        how = "soc" if soc == rad else "rad"
        head = quotient(M, rad, f"{M.label}/{how}")
        for Q, vq, label in _semisimple_pieces(head, seed, head.label):
            out.append(ModuleEntry(label, Q.dim, vq, Q, f"quotient of {M.label} by its {how}",
                                   format_element(lam), _schur(Q, bound) if vq.irreducible else None))
    return out


def classify(p: int, ell: int, chi: PChar, seed: int = 0, *, field_degree: int | None = None,
             cache_dir=None, hom_bound: int = 20_000) -> Report:
    if chi.shape.p != p or chi.shape.ell != ell:
        raise ShapeMismatch(f"chi lives on W_{chi.shape.ell} over p={chi.shape.p}")
    k, psi = reduce_by_truncation(chi)
    try:
        h = height(psi)
    except NoVanishing as exc:
        raise UnsupportedRegime(f"height p-1 regime: {exc}") from exc
    if h > 1 and not psi((h - 1, k)):
        raise UnsupportedRegime(f"height {h} with chi(e_{h - 1} t^{k}) = 0 after truncation")
    scenario = classify_scenario(psi)
    expectation = expectation_for(p, k, scenario)
    notes: list[str] = []

    F = chi.shape.field
    if field_degree is not None and field_degree != F.m:
        F = Field(p, field_degree)
    psi = psi.with_field(F)
    if h <= 1:
        try:
            lambda_set(psi)
        except NotSplit:
            G = Field(p, F.m * p)
            notes.append(f"Lambda(chi) not split over F_{p}^{F.m}; extended to F_{p}^{G.m}")
            F = G
            psi = psi.with_field(F)

    if h == -1:
        entries = _heads(psi, seed, cache_dir, hom_bound)
    elif h <= 1:
        entries = _vermas(psi, seed, cache_dir, hom_bound)
    else:
        M = build_height_r(psi, cache_dir)
        v = is_irreducible(M, seed)
        entries = [ModuleEntry(M.label, M.dim, v, M, "height-r induced", None,
                               _schur(M, hom_bound) if v.irreducible else None)]
    simple = [e for e in entries if e.verdict.irreducible]
    if len(simple) < len(entries):
        notes.append("some modules were not certified simple and are left out of the classes")
    classes, evidence = _group(simple, hom_bound)
    return Report(
        input={"p": p, "ell": ell, "chi": chi.to_json()["values"]},
        truncation={"k": k, "steps": ell - k},
        field=F.describe(),
        height=h,
        scenario=scenario,
        modules=entries,
        classes=classes,
        evidence=evidence,
        expectation=expectation,
        notes=notes,
    )
