"""Campaigns: exhaustive or sampled machine checks of density theorems.

A campaign scans semigroups and applies one assertion per (semigroup, subset).
Orders up to 5 come from the enumerated census; larger orders come from the
structured sampler. Failures are
recorded as violations; hunts for the open questions record discoveries
instead. Work is split by (order, first-row prefix) and folded in that order,
so reports do not depend on the number of workers.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product as cartesian
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import densities as dens
from . import means
from . import semigroup as sg
from .errors import QuotientError, SemidenseError, TheoremViolation, UnknownCampaign
from .search import EXHAUSTIVE_MAX, census, enumerate_prefix, first_rows, sample_semigroup
from .semigroup import FiniteSemigroup, SubsetMask

EXHAUSTIVE_SUBSETS_MAX = 4


@dataclass(frozen=True)
class Record:
    """One violation or discovery, with everything needed to re-run it."""

    campaign: str
    table: str  # flat row-major entries joined by ","
    order: int
    subsets: tuple[str, ...]  # hex masks, in the meaning the campaign gives them
    expected: str
    actual: str
    note: str = ""
    factors: tuple[str, ...] = ()  # product campaign: "order:table" of each factor

    def semigroup(self) -> FiniteSemigroup:
        return sg.from_flat([int(v) for v in self.table.split(",")], self.order)

    def tsv(self, kind: str) -> str:
        fields = [kind, self.note, str(self.order), self.table, " ".join(self.subsets), self.expected, self.actual]
        return "\t".join(fields + list(self.factors))


@dataclass
class Params:
    order_min: int = 1
    order_max: int = 4
    seed: int = 0
    samples: int = 512
    semigroup_samples: int = 64
    dedup: str = "iso"
    jobs: int = 1
    factor_order_max: int = 3


@dataclass
class CampaignReport:
    name: str
    params: Params
    semigroups: int = 0
    subsets: int = 0
    assertions: int = 0
    violations: list[Record] = field(default_factory=list)
    discoveries: list[Record] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, part: "Tally") -> None:
        self.semigroups += part.semigroups
        self.subsets += part.subsets
        self.assertions += part.assertions
        self.violations.extend(part.violations)
        self.discoveries.extend(part.discoveries)
        self.notes.extend(part.notes)

    def tsv(self) -> str:
        p = self.params
        lines = [f"campaign\t{self.name}"]
        for key in ("order_min", "order_max", "seed", "samples", "semigroup_samples", "dedup"):
            lines.append(f"param\t{key}\t{getattr(p, key)}")
        lines.append(f"count\tsemigroups\t{self.semigroups}")
        lines.append(f"count\tsubsets\t{self.subsets}")
        lines.append(f"count\tassertions\t{self.assertions}")
        lines += [r.tsv("violation") for r in self.violations]
        lines += [r.tsv("discovery") for r in self.discoveries]
        lines += [f"note\t{n}" for n in self.notes]
        lines.append(f"discoveries\t{len(self.discoveries)}")
        lines.append(f"status\t{'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


@dataclass
class Tally:
    semigroups: int = 0
    subsets: int = 0
    assertions: int = 0
    violations: list[Record] = field(default_factory=list)
    discoveries: list[Record] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


class Checker:
    """Per-semigroup assertion context handed to campaign functions."""

    def __init__(self, name: str, S: FiniteSemigroup, subsets: list[SubsetMask], rng: random.Random, samples: int):
        self.name = name
        self.S = S
        self.subsets = subsets
        self.rng = rng
        self.samples = samples
        self.tally = Tally(semigroups=1, subsets=len(subsets))
        self._table = ",".join(map(str, S.flat))

    def record(self, masks: Iterable[SubsetMask | int], expected, actual, note: str) -> Record:
        hexes = tuple(m.hex if isinstance(m, SubsetMask) else f"@{m:x}" for m in masks)
        return Record(self.name, self._table, self.S.order, hexes, str(expected), str(actual), note)

    def check(self, ok: bool, note: str, masks=(), expected="", actual="") -> bool:
        self.tally.assertions += 1
        if not ok:
            self.tally.violations.append(self.record(masks, expected, actual, note))
        return ok

    def discover(self, note: str, masks, expected, actual) -> None:
        self.tally.discoveries.append(self.record(masks, expected, actual, note))

    def note(self, text: str) -> None:
        self.tally.notes.append(f"{text}\t{self._table}")


CheckFn = Callable[[Checker], None]
REGISTRY: dict[str, CheckFn] = {}
PAIR_CAMPAIGNS = {"product"}


def campaign(name: str):
    def deco(fn: CheckFn) -> CheckFn:
        REGISTRY[name] = fn
        return fn

    return deco


# per-semigroup campaigns


@campaign("density_equality")
def _density_equality(c: Checker) -> None:
    S = c.S
    if not dens.satisfies_sfc(S):
        return
    for A in c.subsets:
        d = dens.folner_density(S, A)[0]
        ds = means.banach_density(S, A)[0]
        dt = dens.translation_density_oracle(S, A)
        dtf = dens.translation_density_fast(S, A)[0]
        dor = dens.folner_density_oracle(S, A)
        c.check(d == ds == dt == dtf == dor, "d = d* = d_t", [A], "all equal", f"d={d} d*={ds} d_t={dt} d_t_fast={dtf} d_oracle={dor}")


@campaign("inequality_chain")
def _inequality_chain(c: Checker) -> None:
    S = c.S
    amenable, sfc = means.is_left_amenable(S), dens.satisfies_sfc(S)
    if amenable and not sfc:
        c.note("left amenable without SFC")
    if sfc and not amenable:
        c.check(False, "SFC implies left amenable", (), "amenable", "not amenable")
    for A in c.subsets:
        if amenable:
            ds = means.banach_density(S, A)[0]
            dt = dens.translation_density_oracle(S, A)
            c.check(ds <= dt, "d* <= d_t", [A], f"<= {dt}", ds)
            if sfc:
                d = dens.folner_density(S, A)[0]
                c.check(d <= ds, "d <= d*", [A], f"<= {ds}", d)


def _tfae_conditions(S: FiniteSemigroup, subsets: list[SubsetMask]) -> dict[str, bool]:
    K = sg.kernel(S)
    mins = sg.minimal_left_ideals(S)
    t = S.table
    c1 = sg.has_collapse_property(S)[0]
    c3 = all(len(L) == 1 for L in mins)
    c4 = all(t[q][p] == p for p in K for q in S.elements)
    c5 = all(t[q][p] == p for p in K for q in K)
    if dens.satisfies_sfc(S):
        probes = subsets + [S.subset([x]) for x in S.elements]
        c6 = all(dens.folner_density(S, A)[0] in (0, 1) for A in probes)
    else:
        c6 = False
    return {"collapse": c1, "singleton_min_left_ideals": c3, "kernel_fixed": c4, "kernel_right_zero": c5, "density_0_1": c6}


@campaign("tfae_4_6")
def _tfae(c: Checker) -> None:
    S = c.S
    conds = _tfae_conditions(S, c.subsets)
    vals = set(conds.values())
    c.check(len(vals) == 1, "equivalent conditions agree", (), "all equal", conds)
    if conds["collapse"]:
        K = sg.kernel(S)
        c.check(all(S.table[p][p] == p for p in K), "collapse implies kernel idempotent", [K], "idempotent", sg.idempotents(S))
        sfc = dens.satisfies_sfc(S)
        delta = dens.delta_set(S) if sfc else None
        c.check(sfc and delta == K, "collapse implies SFC and kernel = Delta", [K], K, delta)


@campaign("cofinality")
def _cofinality(c: Checker) -> None:
    S = c.S
    if not sg.has_collapse_property(S)[0]:
        return
    for A in c.subsets:
        d = dens.folner_density(S, A)[0]
        cof = sg.is_cofinal(S, A)
        c.check((d > 0) == (d == 1) == cof, "d>0 iff d=1 iff cofinal", [A], f"cofinal={cof}", f"d={d}")


@campaign("right_zero")
def _right_zero(c: Checker) -> None:
    S = c.S
    Z = sg.right_zeros(S)
    if not Z:
        return
    if not c.check(dens.satisfies_sfc(S), "right zero implies SFC", [Z], "SFC", "no SFC"):
        return
    for A in c.subsets:
        d = dens.folner_density(S, A)[0]
        want = 1 if A & Z else 0
        c.check(d == want, "d(A) = [A meets Z]", [A, Z], want, d)


@campaign("thickness")
def _thickness(c: Checker) -> None:
    S = c.S
    amenable, sfc = means.is_left_amenable(S), dens.satisfies_sfc(S)
    for A in c.subsets:
        thick = sg.is_thick(S, A)
        dt = dens.translation_density_oracle(S, A)
        c.check((dt == 1) == thick, "d_t = 1 iff thick", [A], thick, dt)
        if amenable:
            ds = means.banach_density(S, A)[0]
            c.check((ds == 1) == thick, "d* = 1 iff thick", [A], thick, ds)
        if sfc:
            d = dens.folner_density(S, A)[0]
            c.check((d == 1) == thick, "d = 1 iff thick", [A], thick, d)


@campaign("quotient")
def _quotient(c: Checker) -> None:
    S = c.S
    if not dens.satisfies_sfc(S):
        return
    try:
        h = sg.collapse_quotient(S)
    except (QuotientError, TheoremViolation) as exc:
        c.check(False, "collapse quotient exists and is cancellative", (), "quotient", exc)
        return
    T = h.target
    flags = sg.classify(T)
    c.check(flags.left_cancellative and flags.right_cancellative, "quotient cancellative", (), "cancellative", flags)
    c.check(flags.group, "quotient is a group", (), "group", flags)
    c.check(dens.satisfies_sfc(T), "quotient satisfies SFC", (), "SFC", "no SFC")
    for B in T.all_subsets():
        pre = h.preimage(B)
        dT = means.banach_density(T, B)[0]
        dS = means.banach_density(S, pre)[0]
        c.check(dT == dS, "d*(B) = d*(h^-1 B)", [B, pre], dT, dS)
        dF = dens.folner_density(T, B)[0]
        c.check(dF == dS, "d(B) = d*(h^-1 B)", [B, pre], dF, dS)
    for A in c.subsets:
        dA = means.banach_density(S, A)[0]
        dhA = means.banach_density(T, h.image(A))[0]
        c.check(dhA >= dA, "d*(h[A]) >= d*(A)", [A], f">= {dA}", dhA)
    for L in sg.minimal_left_ideals(S):
        sub, _ = S.restrict(L)
        iso = sub.order == T.order and sg.brute_isomorphic(sub, T)
        c.check(iso, "minimal left ideal isomorphic to quotient", [L], T, sub)


def _lim_vertices(G: FiniteSemigroup) -> list[means.MeanVector]:
    out = []
    for x in G.elements:
        p = means.banach_density(G, G.subset([x]))[1]
        if p not in out:
            out.append(p)
    return out


@campaign("lift")
def _lift(c: Checker) -> None:
    S = c.S
    if not means.is_left_amenable(S):
        return
    maps = [sg.identity_map(S), sg.trivial_map(S)]
    if dens.satisfies_sfc(S):
        try:
            maps.append(sg.collapse_quotient(S))
        except (QuotientError, TheoremViolation) as exc:
            c.check(False, "collapse quotient exists", (), "quotient", exc)
    for h in maps:
        for q in _lim_vertices(h.target):
            try:
                p = means.lift_mean_feasible(q, h)
                ok, got = True, p.weights
            except TheoremViolation as exc:
                ok, got = False, exc
            c.check(ok, "invariant lift exists", (), q.weights, got)
        for p in _lim_vertices(S):
            try:
                means.pushforward_mean(p, h)
                ok, got = True, ""
            except TheoremViolation as exc:
                ok, got = False, exc
            c.check(ok, "pushforward of invariant mean is invariant", (), "invariant", got)


def _random_rational(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    den = rng.randint(1, 12)
    t = Fraction(rng.randint(1, den * 4 - 1), den * 4)
    return lo + (hi - lo) * t


@campaign("translate_bound")
def _translate_bound(c: Checker) -> None:
    S, rng = c.S, c.rng
    if not means.is_left_amenable(S):
        return
    n = S.order
    full = (1 << n) - 1
    made = 0
    attempts = 0
    while made < c.samples and attempts < 50 * c.samples:
        attempts += 1
        target = SubsetMask(rng.randint(1, full), n)
        p = means.banach_density(S, target)[1]
        A = SubsetMask(rng.randint(1, full), n)
        pa = p.measure(A)
        if pa == 0:
            continue
        F = SubsetMask(rng.randint(1, full), n)
        eta = _random_rational(rng, Fraction(0), pa)
        R, holds = means.translate_bound_check(S, p, A, F, eta)
        c.check(holds and bool(R), "p(R) >= (p(A)-eta)/(1-eta)", [target, A, F, R], f"eta={eta} p={p.weights}", p.measure(R))
        made += 1


@campaign("delta_ideal")
def _delta_ideal(c: Checker) -> None:
    S = c.S
    if dens.satisfies_sfc(S):
        delta = dens.delta_set(S)
        c.check(sg.is_two_sided_ideal(S, delta), "Delta is a two-sided ideal", [delta], "ideal", delta)
        K = sg.kernel(S)
        c.check(K.issubset(delta), "kernel inside Delta", [K, delta], "subset", "")
        for A in c.subsets:
            if dens.piecewise_syndetic(S, A):
                d = dens.folner_density(S, A)[0]
                c.check(d > 0, "piecewise syndetic implies d > 0", [A], "> 0", d)
    if means.is_left_amenable(S):
        dstar = means.delta_star_set(S)
        c.check(sg.is_two_sided_ideal(S, dstar), "Delta* is a two-sided ideal", [dstar], "ideal", dstar)


@campaign("open_q_dt")
def _open_q_dt(c: Checker) -> None:
    S = c.S
    amenable = means.is_left_amenable(S)
    for A in c.subsets:
        dt = dens.translation_density_oracle(S, A)
        c.tally.assertions += 1
        for x in S.elements:
            xA = S.left_preimage(x, A)
            dxa = dens.translation_density_oracle(S, xA)
            if dxa < dt:
                c.discover("d_t(x^-1 A) < d_t(A)", [A, 1 << x], f">= {dt}", dxa)
        if amenable:
            ds = means.banach_density(S, A)[0]
            if ds != dt:
                c.discover("d_t(A) != d*(A) in left amenable S", [A], ds, dt)


# driving


def _seed_for(seed: int, *parts) -> int:
    digest = hashlib.sha256(repr((seed,) + parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def subsets_for(S: FiniteSemigroup, params: Params, rng: random.Random) -> list[SubsetMask]:
    n = S.order
    if n <= EXHAUSTIVE_SUBSETS_MAX or (1 << n) <= params.samples:
        return list(S.all_subsets())
    return [SubsetMask(rng.getrandbits(n), n) for _ in range(params.samples)]


def check_semigroup(name: str, S: FiniteSemigroup, params: Params, subsets: Optional[list[SubsetMask]] = None) -> Tally:
    rng = random.Random(_seed_for(params.seed, name, S.flat))
    if subsets is None:
        subsets = subsets_for(S, params, rng)
    checker = Checker(name, S, subsets, rng, params.samples)
    try:
        REGISTRY[name](checker)
    except TheoremViolation as exc:
        checker.check(False, "theorem violation raised", (), "", exc)
    return checker.tally


def _work_units(name: str, params: Params) -> list[tuple]:
    units = []
    if name in PAIR_CAMPAIGNS:
        pool = census(params.factor_order_max, params.dedup)
        units = [("pair", i) for i in range(len(pool))]
        return units
    for n in range(params.order_min, params.order_max + 1):
        if n <= EXHAUSTIVE_MAX:
            units += [("prefix", n, fr) for fr in first_rows(n)]
        else:
            units += [("sample", n, k) for k in range(params.semigroup_samples)]
    return units


def _run_unit(args) -> Tally:
    name, params, unit = args
    total = Tally()
    if unit[0] == "prefix":
        _, n, fr = unit
        dedup = params.dedup
        semigroups = [sg.from_flat(flat, n) for flat in enumerate_prefix(n, fr, dedup)]
    elif unit[0] == "sample":
        _, n, k = unit
        rng = random.Random(_seed_for(params.seed, "sampler", n, k))
        semigroups = [sample_semigroup(n, rng)]
    else:
        return _product_unit(params, unit[1])
    for S in semigroups:
        part = check_semigroup(name, S, params)
        _add(total, part)
    return total


def _add(total: Tally, part: Tally) -> None:
    total.semigroups += part.semigroups
    total.subsets += part.subsets
    total.assertions += part.assertions
    total.violations += part.violations
    total.discoveries += part.discoveries
    total.notes += part.notes


def _product_unit(params: Params, i: int) -> Tally:
    """All pairs (pool[i], T) with T amenable and |S||T| <= 16."""
    pool = census(params.factor_order_max, params.dedup)
    S = pool[i]
    total = Tally()
    if not means.is_left_amenable(S):
        return total
    for j, T in enumerate(pool):
        if not means.is_left_amenable(T) or S.order * T.order > 16:
            continue
        _add(total, check_product(S, T, params, random.Random(_seed_for(params.seed, "product", i, j))))
    return total


def check_product(S: FiniteSemigroup, T: FiniteSemigroup, params: Params, rng: random.Random,
                  pairs: Optional[list[tuple[SubsetMask, SubsetMask]]] = None) -> Tally:
    P = sg.direct_product(S, T)
    name = "product"
    checker = Checker(name, P, [], rng, params.samples)
    if pairs is None:
        all_pairs = (1 << S.order) * (1 << T.order)
        if all_pairs <= params.samples:
            pairs = [(A, B) for A in S.all_subsets() for B in T.all_subsets()]
        else:
            pairs = [
                (SubsetMask(rng.getrandbits(S.order), S.order), SubsetMask(rng.getrandbits(T.order), T.order))
                for _ in range(params.samples)
            ]
    checker.tally.subsets = len(pairs)
    for A, B in pairs:
        AB = sg.product_subset(A, B)
        dA, p = means.banach_density(S, A)
        dB, q = means.banach_density(T, B)
        dAB = means.banach_density(P, AB)[0]
        checker.check(dAB == dA * dB, "d*(AxB) = d*(A) d*(B)", [A, B, AB], dA * dB, dAB)
        try:
            r = means.product_mean(S, p, T, q)
            ok = r.measure(AB) == p.measure(A) * q.measure(B)
            got = r.measure(AB)
        except TheoremViolation as exc:
            ok, got = False, exc
        checker.check(ok, "r(AxB) = p(A) q(B)", [A, B, AB], p.measure(A) * q.measure(B), got)
    factors = tuple(f"{G.order}:" + ",".join(map(str, G.flat)) for G in (S, T))
    tally = checker.tally
    tally.violations = [replace(r, factors=factors) for r in tally.violations]
    return tally


def run_campaign(name: str, params: Optional[Params] = None, **overrides) -> CampaignReport:
    if name not in REGISTRY and name not in PAIR_CAMPAIGNS:
        raise UnknownCampaign(f"unknown campaign {name!r}; known: {', '.join(sorted(campaign_names()))}")
    params = params or Params()
    for k, v in overrides.items():
        setattr(params, k, v)
    if params.order_min < 1 or params.order_max < params.order_min:
        raise SemidenseError("need 1 <= order_min <= order_max")
    units = [(name, params, u) for u in _work_units(name, params)]
    report = CampaignReport(name, params)
    if params.jobs <= 1:
        parts = map(_run_unit, units)
        for part in parts:
            report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=params.jobs) as pool:
            for part in pool.map(_run_unit, units, chunksize=max(1, len(units) // (8 * params.jobs))):
                report.merge(part)
    return report


def campaign_names() -> list[str]:
    return sorted(set(REGISTRY) | PAIR_CAMPAIGNS)


REGISTRY["product"] = lambda c: None  # pairs are driven by _product_unit


def reproduce(record: Record, params: Optional[Params] = None) -> bool:
    """Re-run the single case behind a record; True if the same record reappears."""
    params = params or Params()
    S = record.semigroup()
    if record.campaign == "product":
        S, T = (sg.from_flat([int(v) for v in f.split(":")[1].split(",")], int(f.split(":")[0])) for f in record.factors)
        A, B = (SubsetMask(int(h[1:], 16), G.order) for h, G in zip(record.subsets, (S, T)))
        tally = check_product(S, T, params, random.Random(0), pairs=[(A, B)])
        return any(r == record for r in tally.violations)
    masks = [SubsetMask(int(h[1:], 16), S.order) for h in record.subsets]
    if record.campaign == "open_q_dt":
        subsets = masks[:1]
    else:
        subsets = [m for m in masks if m.order == S.order][:1]
    tally = check_semigroup(record.campaign, S, params, subsets=subsets or None)
    return any(r == record for r in tally.violations + tally.discoveries)


def dump_artifacts(report: CampaignReport, directory: str | Path) -> list[Path]:
    """Write each violation/discovery as .sgt plus a reproduction command file."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    repro_lines = []
    for kind, records in (("violation", report.violations), ("discovery", report.discoveries)):
        for k, rec in enumerate(records):
            path = out / f"{report.name}-{kind}-{k:04d}.sgt"
            sg.write_sgt(rec.semigroup(), path)
            written.append(path)
            subset = f" --subset {rec.subsets[0]}" if rec.subsets else ""
            repro_lines.append(f"# {kind} {k}: {rec.note}\nsemidense analyze {path}{subset}")
    if repro_lines:
        repro = out / f"{report.name}-repro.txt"
        repro.write_text("\n".join(repro_lines) + "\n")
        written.append(repro)
    return written


def product_pairs(factor_order_max: int = 3, dedup: str = "iso") -> Iterable[tuple[FiniteSemigroup, FiniteSemigroup]]:
    pool = census(factor_order_max, dedup)
    for S, T in cartesian(pool, pool):
        if means.is_left_amenable(S) and means.is_left_amenable(T) and S.order * T.order <= 16:
            yield S, T
