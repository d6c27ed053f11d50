"""Plane sets on a dyadic grid and the swappable-squares construction.

A set is stored as a 2**N x 2**N grid of cells of side 2**-N; the content
of cell (band i, column j) is a full-height, left-aligned rectangle whose
width is an integer number of sub-units 2**-(N+K).  The starting set is
the hypograph {(x, y) : x < g(y)} of the horizontal target g, whose
vertical cross section is exactly the distribution function of g.  A swap
exchanges the contents of two same-band squares of generation n <= N,
which translates cell contents by a multiple of the cell width and so
preserves the representation.

A pair of squares may be swapped when, with margin exactly 2**-n,

  * the vertical section exceeds the target f by the margin throughout
    the donor column class,
  * it falls below f by the margin throughout the receiver column class,
  * the receiver content is a proper subset of the donor content after
    shifting (so the move is not a no-op),
  * after the exchange, the prefix integral of f's rearrangement still
    never exceeds the prefix integral of the rearranged vertical section.

Each executed swap preserves all horizontal sections and decreases
|f - v|_1 by exactly the symmetric difference of the two sets, so running
generations n = 1, 2, ..., N to exhaustion terminates with a nonincreasing
error sequence.

Everything here reduces to integer arithmetic: with D the common scale of
f's values and the sub-unit grid, sections, margins and prefix sums are
integers, so all comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .dyadic import Dyadic
from .feasibility import FeasibilityReport, check_hlp
from .report import GenerationRecord, SwapRecord, TraceSummary
from .stepfn import StepFunction


class QuantizationError(ValueError):
    """Input function does not live on the required dyadic grid."""


class MoveOutOfRange(IndexError):
    """Swap indices do not address a square of this grid."""


class InfeasibleInput(ValueError):
    """Marginal pair fails the realizability test; no construction exists."""

    def __init__(self, report: FeasibilityReport):
        super().__init__(f"marginals not realizable: {report.verdict.value}")
        self.report = report


@dataclass(frozen=True)
class GridParams:
    """depth N: finest squares have side 2**-N.
    subres K: cell fill widths are multiples of 2**-(N+K)."""

    depth: int
    subres: int = 0

    def __post_init__(self):
        if self.depth < 1 or self.subres < 0 or self.depth + self.subres > 30:
            raise ValueError("need depth >= 1, subres >= 0, depth + subres <= 30")

    @property
    def side(self) -> int:
        return 1 << self.depth

    @property
    def sub_per_cell(self) -> int:
        return 1 << self.subres

    @property
    def sub_total(self) -> int:
        return 1 << (self.depth + self.subres)


@dataclass(frozen=True)
class SwapMove:
    """Exchange the squares (band, donor) and (band, receiver) of the
    given generation; indices are 1-based within {1, ..., 2**gen}."""

    gen: int
    band: int
    donor: int
    receiver: int

    def __post_init__(self):
        if self.gen < 1:
            raise ValueError("generation must be >= 1")
        top = 1 << self.gen
        for name in ("band", "donor", "receiver"):
            v = getattr(self, name)
            if not 1 <= v <= top:
                raise ValueError(f"{name} index {v} outside 1..{top}")
        if self.donor == self.receiver:
            raise ValueError("donor and receiver must differ")


@dataclass(frozen=True)
class DyadicSet:
    """Subset of the unit square: fill[i][j] sub-units of content in the
    cell at band i (bottom-up), column j (left to right)."""

    params: GridParams
    fill: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        side, cap = self.params.side, self.params.sub_per_cell
        if len(self.fill) != side:
            raise ValueError("fill grid has wrong number of bands")
        for row in self.fill:
            if len(row) != side:
                raise ValueError("fill grid has wrong number of columns")
            for w in row:
                if not isinstance(w, int) or not 0 <= w <= cap:
                    raise ValueError(f"cell fill {w} outside 0..{cap}")

    def measure(self) -> Dyadic:
        total = sum(w for row in self.fill for w in row)
        return Dyadic(total, 2 * self.params.depth + self.params.subres)


def _plateau_values(f: StepFunction, depth: int) -> list[Dyadic]:
    """Values of f on the 2**depth uniform intervals; QuantizationError if
    f is not constant on one of them."""
    for b in f.breakpoints[1:-1]:
        if b.exp > depth:
            raise QuantizationError(
                f"breakpoint {b} is not a multiple of 2**-{depth}"
            )
    out = []
    idx = 0  # current plateau of f
    for j in range(1 << depth):
        lo = Dyadic(j, depth)
        while f.breakpoints[idx + 1] <= lo:
            idx += 1
        out.append(f.values[idx])
    return out


def initial_set(g: StepFunction, params: GridParams) -> DyadicSet:
    """Hypograph of g: band i holds [0, g_i) x (the band).

    g must be constant on each band with values in [0, 1] that are
    multiples of the sub-unit 2**-(N+K).  The resulting vertical cross
    section equals the distribution function of g exactly.
    """
    vals = _plateau_values(g, params.depth)
    nk = params.depth + params.subres
    cap = params.sub_per_cell
    rows = []
    for v in vals:
        if v < Dyadic(0) or v > Dyadic(1):
            raise QuantizationError(f"band value {v} outside [0, 1]")
        if v.exp > nk:
            raise QuantizationError(f"band value {v} not a multiple of 2**-{nk}")
        units = v.num << (nk - v.exp)
        full, rem = divmod(units, cap)
        row = [cap] * full
        if rem:
            row.append(rem)
        row.extend([0] * (params.side - len(row)))
        rows.append(tuple(row))
    return DyadicSet(params, tuple(rows))


def vertical_section(e: DyadicSet) -> StepFunction:
    """v_E(x): total height of the set above x, exact on the sub-unit grid."""
    p = e.params
    vals = []
    for j in range(p.side):
        col = [e.fill[i][j] for i in range(p.side)]
        for m in range(p.sub_per_cell):
            vals.append(Dyadic(sum(1 for w in col if w > m), p.depth))
    return StepFunction.from_grid(vals, p.depth + p.subres)


def horizontal_section(e: DyadicSet) -> StepFunction:
    """h_E(y): width of the set at height y; constant on each band."""
    p = e.params
    vals = [Dyadic(sum(row), p.depth + p.subres) for row in e.fill]
    return StepFunction.from_grid(vals, p.depth)


def swap(e: DyadicSet, move: SwapMove) -> DyadicSet:
    """Exchange the fills of the two generation-n squares, columnwise."""
    p = e.params
    if move.gen > p.depth:
        raise MoveOutOfRange(
            f"generation {move.gen} exceeds grid depth {p.depth}"
        )
    span = p.side >> move.gen
    r0 = (move.band - 1) * span
    j0 = (move.donor - 1) * span
    k0 = (move.receiver - 1) * span
    grid = [list(row) for row in e.fill]
    for r in range(r0, r0 + span):
        for c in range(span):
            grid[r][j0 + c], grid[r][k0 + c] = grid[r][k0 + c], grid[r][j0 + c]
    return DyadicSet(p, tuple(tuple(row) for row in grid))


class _Work:
    """Mutable integer-scaled state for the swap search.

    fu/vu hold the target and the vertical section per finest sub-column,
    both in units of 2**-D where D >= N + K also covers the denominators
    of f's values; margins 2**-n become the integers 2**(D - n).
    """

    def __init__(self, params: GridParams, fill, f: StepFunction):
        self.params = params
        self.N, self.K = params.depth, params.subres
        self.side = params.side
        self.subs = params.sub_per_cell
        self.V = params.sub_total
        fvals = _plateau_values(f, self.N)
        self.D = max([self.N + self.K] + [v.exp for v in fvals])
        self.fu = []
        for v in fvals:
            if v < Dyadic(0):
                raise QuantizationError("target values must be nonnegative")
            self.fu.extend([v.num << (self.D - v.exp)] * self.subs)
        pre = [0]
        for u in sorted(self.fu, reverse=True):
            pre.append(pre[-1] + u)
        self.f_pre = pre
        self.fill = [list(row) for row in fill]
        self.vu = [0] * self.V
        for j in range(self.side):
            self._recount_col(j)
        self.last_l1_drop: Optional[Dyadic] = None
        self.last_sym_diff: Optional[Dyadic] = None

    # -- state maintenance -------------------------------------------------

    def _recount_col(self, j: int) -> None:
        col = [self.fill[i][j] for i in range(self.side)]
        base = j * self.subs
        shift = self.D - self.N
        for m in range(self.subs):
            self.vu[base + m] = sum(1 for w in col if w > m) << shift

    def snapshot_fill(self):
        return [row[:] for row in self.fill]

    # -- exact quantities ----------------------------------------------------

    def residual_units(self) -> int:
        return sum(abs(a - b) for a, b in zip(self.fu, self.vu))

    def residual_dyadic(self) -> Dyadic:
        return Dyadic(self.residual_units(), self.D + self.N + self.K)

    def sym_diff_dyadic(self, other_fill) -> Dyadic:
        total = sum(
            abs(a - b)
            for ra, rb in zip(self.fill, other_fill)
            for a, b in zip(ra, rb)
        )
        return Dyadic(total, 2 * self.N + self.K)

    def row_unit_sums(self) -> list[int]:
        return [sum(row) for row in self.fill]

    def majorized(self, vu=None) -> bool:
        """Prefix integral of sorted f never exceeds that of sorted v."""
        run = 0
        pre = self.f_pre
        for m, u in enumerate(sorted(self.vu if vu is None else vu, reverse=True)):
            run += u
            if run < pre[m + 1]:
                return False
        return True

    def rows_are_translated_hypograph_slices(self) -> bool:
        """Each band is a permutation of (full cells, at most one partial,
        empty cells); holds for every set reachable from a hypograph."""
        cap = self.subs
        return all(sum(1 for w in row if 0 < w < cap) <= 1 for row in self.fill)

    # -- swap conditions -------------------------------------------------------

    def _class_range(self, gen: int, idx: int) -> range:
        width = (self.side >> gen) * self.subs
        return range((idx - 1) * width, idx * width)

    def _donor_ok(self, gen: int, j: int) -> bool:
        margin = 1 << (self.D - gen)
        return all(self.vu[x] >= self.fu[x] + margin for x in self._class_range(gen, j))

    def _receiver_ok(self, gen: int, k: int) -> bool:
        margin = 1 << (self.D - gen)
        return all(self.vu[x] <= self.fu[x] - margin for x in self._class_range(gen, k))

    def _proper_subset(self, gen: int, band: int, j: int, k: int) -> bool:
        span = self.side >> gen
        r0, j0, k0 = (band - 1) * span, (j - 1) * span, (k - 1) * span
        strict = False
        for r in range(r0, r0 + span):
            row = self.fill[r]
            for c in range(span):
                wj, wk = row[j0 + c], row[k0 + c]
                if wk > wj:
                    return False
                if wk < wj:
                    strict = True
        return strict

    def _vu_after(self, gen: int, band: int, j: int, k: int) -> list[int]:
        span = self.side >> gen
        r0, j0, k0 = (band - 1) * span, (j - 1) * span, (k - 1) * span
        vnew = self.vu[:]
        shift = self.D - self.N
        for c in range(span):
            for col, other in ((j0 + c, k0 + c), (k0 + c, j0 + c)):
                base = col * self.subs
                vals = [
                    self.fill[r][other] if r0 <= r < r0 + span else self.fill[r][col]
                    for r in range(self.side)
                ]
                for m in range(self.subs):
                    vnew[base + m] = sum(1 for w in vals if w > m) << shift
        return vnew

    def _dominance_after(self, gen: int, band: int, j: int, k: int) -> bool:
        return self.majorized(self._vu_after(gen, band, j, k))

    def swappable(self, move: SwapMove) -> bool:
        if move.gen > self.N:
            return False
        return (
            self._donor_ok(move.gen, move.donor)
            and self._receiver_ok(move.gen, move.receiver)
            and self._proper_subset(move.gen, move.band, move.donor, move.receiver)
            and self._dominance_after(move.gen, move.band, move.donor, move.receiver)
        )

    def find_first(self, gen: int) -> Optional[SwapMove]:
        """First swappable move in (band, donor, receiver) ascending order."""
        top = 1 << gen
        donors = [j for j in range(1, top + 1) if self._donor_ok(gen, j)]
        if not donors:
            return None
        receivers = {k for k in range(1, top + 1) if self._receiver_ok(gen, k)}
        if not receivers:
            return None
        for band in range(1, top + 1):
            for j in donors:
                for k in range(1, top + 1):
                    if k == j or k not in receivers:
                        continue
                    if self._proper_subset(gen, band, j, k) and self._dominance_after(
                        gen, band, j, k
                    ):
                        return SwapMove(gen, band, j, k)
        return None

    def apply(self, move: SwapMove) -> None:
        span = self.side >> move.gen
        r0 = (move.band - 1) * span
        j0 = (move.donor - 1) * span
        k0 = (move.receiver - 1) * span
        before = self.residual_units()
        moved = 0
        for r in range(r0, r0 + span):
            row = self.fill[r]
            for c in range(span):
                a, b = row[j0 + c], row[k0 + c]
                moved += abs(a - b)
                row[j0 + c], row[k0 + c] = b, a
        for c in range(span):
            self._recount_col(j0 + c)
            self._recount_col(k0 + c)
        after = self.residual_units()
        self.last_l1_drop = Dyadic(before - after, self.D + self.N + self.K)
        self.last_sym_diff = Dyadic(2 * moved, 2 * self.N + self.K)

    def to_set(self) -> DyadicSet:
        return DyadicSet(self.params, tuple(tuple(row) for row in self.fill))


def is_swappable(e: DyadicSet, f: StepFunction, move: SwapMove) -> bool:
    """Exact test of the four swap conditions for one candidate move.

    Returns False for generations beyond the grid depth.  The caller is
    responsible for the standing hypothesis that f's rearrangement
    primitive is dominated by the section's; it is asserted in debug runs.
    """
    work = _Work(e.params, e.fill, f)
    assert work.majorized(), "prefix dominance hypothesis violated for this set"
    return work.swappable(move)


def optimize_generation(e: DyadicSet, f: StepFunction, gen: int) -> DyadicSet:
    """Apply first-found swaps of one generation until none remains.

    Deterministic: candidates are scanned in ascending (band, donor,
    receiver) order and the first admissible one fires; each swap strictly
    decreases |f - v|_1 on a finite grid, so the loop terminates.
    """
    if not 1 <= gen <= e.params.depth:
        raise ValueError(f"generation must lie in 1..{e.params.depth}")
    work = _Work(e.params, e.fill, f)
    while True:
        move = work.find_first(gen)
        if move is None:
            return work.to_set()
        work.apply(move)


def reconstruct(
    f: StepFunction,
    g: StepFunction,
    params: GridParams,
    on_swap: Optional[Callable[[SwapRecord], None]] = None,
) -> tuple[DyadicSet, TraceSummary]:
    """Drive the hypograph of g toward vertical section f, one generation
    at a time.

    Requires the pair to pass check_hlp and both functions to live on the
    grid (f constant per column band, g constant per row band with
    sub-unit values).  Horizontal sections equal g at every stage; the
    residual |f - v|_1 is nonincreasing in the generation.  Returns the
    terminal set and the full trace.
    """
    rep = check_hlp(f, g)
    if not rep.feasible:
        raise InfeasibleInput(rep)
    e0 = initial_set(g, params)
    work = _Work(params, e0.fill, f)
    assert work.majorized(), "feasible start must dominate the target"
    initial_res = work.residual_dyadic()
    records: list[SwapRecord] = []
    gens: list[GenerationRecord] = []
    for gen in range(1, params.depth + 1):
        fill_before = work.snapshot_fill()
        count = 0
        while True:
            move = work.find_first(gen)
            if move is None:
                break
            work.apply(move)
            rec = SwapRecord(
                gen,
                move.band,
                move.donor,
                move.receiver,
                work.last_l1_drop,
                work.last_sym_diff,
            )
            records.append(rec)
            if on_swap is not None:
                on_swap(rec)
            count += 1
        assert work.rows_are_translated_hypograph_slices()
        gens.append(
            GenerationRecord(
                gen, count, work.residual_dyadic(), work.sym_diff_dyadic(fill_before)
            )
        )
    summary = TraceSummary(
        generations=tuple(gens),
        swaps=tuple(records),
        initial_residual=initial_res,
        final_residual=work.residual_dyadic(),
        feasibility=rep,
    )
    return work.to_set(), summary


class ReplayState:
    """Re-derives every per-swap invariant while replaying a trace."""

    def __init__(self, f: StepFunction, g: StepFunction, params: GridParams):
        e0 = initial_set(g, params)
        self.work = _Work(params, e0.fill, f)

    @property
    def last_l1_drop(self):
        return self.work.last_l1_drop

    @property
    def last_sym_diff(self):
        return self.work.last_sym_diff

    def snapshot_fill(self):
        return self.work.snapshot_fill()

    def residual_dyadic(self):
        return self.work.residual_dyadic()

    def sym_diff_dyadic(self, other_fill):
        return self.work.sym_diff_dyadic(other_fill)

    def initially_majorized(self) -> bool:
        return self.work.majorized()

    def verify_and_apply(self, move: SwapMove) -> Optional[str]:
        """Apply one recorded swap; return the first violated invariant."""
        w = self.work
        if move.gen > w.N:
            return "generation exceeds grid depth"
        span = w.side >> move.gen
        r0 = (move.band - 1) * span
        j0 = (move.donor - 1) * span
        k0 = (move.receiver - 1) * span

        rows_before = w.row_unit_sums()
        vu_before = w.vu[:]
        fill_before = w.snapshot_fill()
        res_before = w.residual_dyadic()

        w.apply(move)

        # row sections and measure are untouched by a horizontal exchange
        if w.row_unit_sums() != rows_before:
            return "horizontal section changed"

        # one-sided set differences match the column integrals of the
        # vertical-section change (all on the same exact scale)
        lost = gained = 0
        for r in range(w.side):
            for c in range(w.side):
                d = fill_before[r][c] - w.fill[r][c]
                if d > 0:
                    lost += d
                else:
                    gained -= d
        donor_cols = range(j0 * w.subs, (j0 + span) * w.subs)
        recv_cols = range(k0 * w.subs, (k0 + span) * w.subs)
        drop_d = sum(vu_before[x] - w.vu[x] for x in donor_cols)
        rise_k = sum(w.vu[x] - vu_before[x] for x in recv_cols)
        # lost cell units are areas 2**-(2N+K); section sums are in units
        # 2**-(D+N+K): lost * 2**(D-N) must equal the section-change sum
        if lost << (w.D - w.N) != drop_d:
            return "set loss does not match donor-column section drop"
        if gained << (w.D - w.N) != rise_k:
            return "set gain does not match receiver-column section rise"

        # the L1 error drops by exactly the symmetric difference
        sym = w.sym_diff_dyadic(fill_before)
        if sym != w.last_sym_diff:
            return "symmetric difference bookkeeping mismatch"
        if sym.num == 0:
            return "swap moved no mass"
        if w.residual_dyadic() != res_before - sym:
            return "L1 error did not drop by the symmetric difference"

        # per column class: donor stays above f, receiver below, rest equal
        for cls in range(1, (1 << move.gen) + 1):
            rng = w._class_range(move.gen, cls)
            if cls == move.donor:
                if not all(w.fu[x] <= w.vu[x] <= vu_before[x] for x in rng):
                    return "donor column left the f .. v_before corridor"
            elif cls == move.receiver:
                if not all(w.fu[x] >= w.vu[x] >= vu_before[x] for x in rng):
                    return "receiver column left the v_before .. f corridor"
            elif any(w.vu[x] != vu_before[x] for x in rng):
                return "untouched column changed"

        # prefix dominance preserved
        if not w.majorized():
            return "prefix dominance lost after swap"
        return None


def replay_state(f: StepFunction, g: StepFunction, params: GridParams) -> ReplayState:
    return ReplayState(f, g, params)


def discrete_exact_set(
    f: StepFunction, g: StepFunction, params: GridParams
) -> Optional[DyadicSet]:
    """Zero-residual realization through the matrix constructor, when the
    targets are whole numbers of cells per band and column.

    Returns None when a value is off the coarse grid or the margins are
    not realizable.
    """
    from .matrices import realize_exact_margins

    try:
        fvals = _plateau_values(f, params.depth)
        gvals = _plateau_values(g, params.depth)
    except QuantizationError:
        return None
    n = params.depth
    cols, rows = [], []
    for vals, out in ((fvals, cols), (gvals, rows)):
        for v in vals:
            if v.exp > n or v < Dyadic(0) or v > Dyadic(1):
                return None
            out.append(v.num << (n - v.exp))
    a = realize_exact_margins(rows, cols)
    if a is None:
        return None
    cap = params.sub_per_cell
    fill = tuple(
        tuple(cap * a.entries[i][j] for j in range(params.side))
        for i in range(params.side)
    )
    return DyadicSet(params, fill)
