"""Full analysis of one foliation: every applicable decision route, the
singularity table, the inflection decomposition, branching data, and the
optional numeric monodromy cross-check, with route agreement enforced."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .foliation import PlaneFoliation, inflection_divisor
from .galois import (
    GaloisVerdict,
    ReductionDegenerate,
    UseAnotherMethod,
    branching_and_genus,
    detect_symmetry,
    discriminant_square_test,
    extremal_type_report,
    reduce_to_p1,
)
from .klein1d import classify


@dataclass
class SymmetryBlock:
    symmetry: object
    reduction: object
    klein: object


@dataclass
class AnalysisResult:
    foliation: PlaneFoliation
    verdict: GaloisVerdict
    routes: dict
    invariants: list
    inflection: object
    symmetry: SymmetryBlock | None = None
    branching: object | None = None
    genus: int | None = None
    monodromy: object | None = None
    timings: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.verdict.status


def analyze(
    F: PlaneFoliation,
    numeric: bool | None = None,
    seed: int = 7,
    full: bool | None = None,
    dump_csv=None,
) -> AnalysisResult:
    """Run every applicable route and cross-check their statuses.

    The local-invariant route (singularity table and inflection divisor) is
    expensive for high-degree symmetric foliations; by default it runs when
    the degree is at most 8 or when no other route decided.  Pass
    ``full=True`` to force it, ``full=False`` to skip it when possible.
    """
    timings: dict = {}
    routes: dict = {}
    d = F.degree

    t0 = time.perf_counter()
    if d in (2, 3):
        try:
            routes["discriminant_square"] = discriminant_square_test(F)
        except UseAnotherMethod:
            pass
    timings["discriminant"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sym_block = None
    if d >= 2:
        for sym in detect_symmetry(F):
            if sym.normal_form is None:
                continue
            try:
                fmap = reduce_to_p1(F, sym)
            except ReductionDegenerate:
                continue
            outcome = classify(fmap)
            status = "galois" if outcome.klein.is_galois() else "not_galois"
            routes["symmetry_reduction"] = GaloisVerdict(
                status,
                "symmetry_reduction",
                d,
                {"symmetry": sym, "reduction": fmap, "klein": outcome},
            )
            sym_block = SymmetryBlock(sym, fmap, outcome)
            break
    timings["symmetry"] = time.perf_counter() - t0

    decided_already = any(v.status != "inconclusive" for v in routes.values())
    if not decided_already:
        want_local = True
    elif full is not None:
        want_local = full
    else:
        want_local = d <= 8

    invariants = []
    inflection = None
    if want_local:
        t0 = time.perf_counter()
        local_report = extremal_type_report(F, seed=seed)
        routes["local_conditions"] = local_report.verdict
        invariants = local_report.invariants
        timings["local"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        inflection = inflection_divisor(F)
        timings["inflection"] = time.perf_counter() - t0

    decided = {v.status for v in routes.values() if v.status != "inconclusive"}
    if len(decided) > 1:
        raise AssertionError(
            f"decision routes disagree: "
            + ", ".join(f"{k}:{v.status}" for k, v in routes.items())
        )

    if d == 1:
        main = GaloisVerdict("galois", "low_degree", d, {})
    elif "discriminant_square" in routes:
        main = routes["discriminant_square"]
    elif d == 2:
        main = GaloisVerdict("galois", "low_degree", d, {})
    elif "symmetry_reduction" in routes and routes["symmetry_reduction"].status != "inconclusive":
        main = routes["symmetry_reduction"]
    else:
        main = routes["local_conditions"]

    bw = genus = None
    t0 = time.perf_counter()
    if main.is_galois:
        best = main
        if not main.certificate.get("extremal") and routes.get(
            "local_conditions", None
        ) is not None and routes["local_conditions"].certificate.get("extremal"):
            best = routes["local_conditions"]
        data = branching_and_genus(F, best, seed=seed)
        if data is not None:
            bw, genus = data
    timings["branching"] = time.perf_counter() - t0

    result = AnalysisResult(
        foliation=F,
        verdict=main,
        routes=routes,
        invariants=invariants,
        inflection=inflection,
        symmetry=sym_block,
        branching=bw,
        genus=genus,
        timings=timings,
    )

    want_numeric = numeric if numeric is not None else (
        (main.status == "inconclusive" or (main.is_galois and bw is None)) and d <= 6
    )
    if want_numeric:
        t0 = time.perf_counter()
        from .monodromy import cross_check

        result.monodromy = cross_check(F, seed=seed + 100, dump_csv=dump_csv)
        timings["monodromy"] = time.perf_counter() - t0
        if genus is not None and result.monodromy.numeric_genus != genus:
            raise AssertionError(
                "numeric genus disagrees with the symbolic certificate"
            )
    return result
