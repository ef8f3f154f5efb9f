"""Monte Carlo for the four kaonic quantum-eraser setups.

Setups
------
``a``  left: matter at t_l.  right: matter at t_r0 (strangeness) or a decay-time
       watch from t_r0 (lifetime), chosen by ``meter``.
``b``  matter in both beams.  A right kaon that decays before reaching the
       matter at t_r0 is lifetime-tagged by its decay time instead.
``c``  left: matter at t_l.  right: free flight; the decay mode decides
       whether strangeness (semileptonic) or lifetime (pionic) is read out.
``d``  both kaons fly freely and are read out passively.

Sampling model
--------------
Events are generated in two stages.  The K_S/K_L basis diagonalizes every
survival and decay-time operator, so when CP violation is neglected the
times, and whether each side is usable, follow a classical mixture: one
kaon is K_S, the other K_L, each with its own exponential clock.  Stage one
draws that assignment and the decay times.  Stage two draws the joint
outcome from the conditional cell probabilities given the measurement kinds
and times.  For strangeness on both sides that is the Born rule on the
normalized surviving pair.  When a lifetime is read, it is the posterior
over which side carried K_S.  The cell is picked with a single uniform.
Collapse ordering therefore only changes how the cell probabilities are
computed (first-side marginal times second-side conditional), never the
random numbers consumed.

Pairs in which a measured kaon is gone before its absorber are lost and
not tallied.  CP violation is neglected throughout (epsilon is set to 0).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats
from scipy.special import expit

from ..errors import ConfigurationError
from ..evolution import scaled_propagator_matrix
from ..pair import surviving_pair_coefficients
from ..states import PhysParams, cp_eigenstates
from . import streams
from .measurements import (
    DEFAULT_CUT,
    LIFETIME_LABELS,
    STRANGENESS_LABELS,
    exponential_times,
)

SETUPS = ("a", "b", "c", "d")
METERS = ("strangeness", "lifetime", "random")
ORDERS = ("chronological", "reverse", "left-first", "right-first")

# sorting classes: left basis then right basis (S = strangeness, L = lifetime)
CLASSES = ("SS", "SL", "LS", "LL")
_CLASS_BASES = {"SS": (0, 0), "SL": (0, 1), "LS": (1, 0), "LL": (1, 1)}
_BASIS_LABELS = (STRANGENESS_LABELS, LIFETIME_LABELS)

# measurement kind codes
ACTIVE_STRANGENESS, ACTIVE_LIFETIME, PASSIVE_STRANGENESS, PASSIVE_LIFETIME = range(4)
KIND_NAMES = ("ActiveStrangeness", "ActiveLifetime", "PassiveStrangeness", "PassiveLifetime")
_KIND_BASIS = np.array([0, 1, 0, 1])

EQUIVALENCE_P_MIN = 1e-3


@dataclass(frozen=True)
class EraserConfig:
    setup: str = "a"
    t_l: float = 1.0
    t_r0: float = 1.0
    branching_semileptonic: float = 0.5
    n_events: int = 10_000
    seed: int = 0
    cut: float = DEFAULT_CUT
    meter: str = "strangeness"
    # keep strangeness-strangeness events only when their time difference is
    # within dt_window / 2 of t_l - t_r0; None keeps all
    dt_window: float | None = None

    def __post_init__(self):
        if self.setup not in SETUPS:
            raise ConfigurationError(f"setup must be one of {SETUPS}, got {self.setup!r}")
        if self.meter not in METERS:
            raise ConfigurationError(f"meter must be one of {METERS}, got {self.meter!r}")
        if self.setup != "a" and self.meter != "strangeness":
            raise ConfigurationError(f"meter choice only applies to setup a, not {self.setup!r}")
        if not (self.t_l >= 0 and self.t_r0 >= 0):
            raise ConfigurationError("t_l and t_r0 must be >= 0")
        if not 0.0 <= self.branching_semileptonic <= 1.0:
            raise ConfigurationError("branching_semileptonic must lie in [0, 1]")
        if int(self.n_events) != self.n_events or self.n_events < 1:
            raise ConfigurationError("n_events must be a positive integer")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if not self.cut > 0:
            raise ConfigurationError("cut must be > 0")
        if self.dt_window is not None and not self.dt_window > 0:
            raise ConfigurationError("dt_window must be > 0")

    @property
    def delta_t(self) -> float:
        return self.t_l - self.t_r0


@dataclass(frozen=True)
class EventRecord:
    left_kind: str
    right_kind: str
    left_outcome: str
    right_outcome: str
    left_time: float
    right_time: float

    @property
    def sorting_class(self) -> str:
        left = "S" if self.left_outcome in STRANGENESS_LABELS else "L"
        right = "S" if self.right_outcome in STRANGENESS_LABELS else "L"
        return left + right


@dataclass(frozen=True)
class ClassTally:
    name: str
    counts: tuple[int, int, int, int]
    expected: tuple[float, float, float, float]
    variance: tuple[float, float, float, float]

    @property
    def cells(self) -> list[str]:
        left, right = (_BASIS_LABELS[b] for b in _CLASS_BASES[self.name])
        return [f"{a},{b}" for a in left for b in right]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def frequencies(self) -> list[float]:
        n = self.total
        return [c / n if n else 0.0 for c in self.counts]

    @property
    def stderr(self) -> list[float]:
        n = self.total
        return [math.sqrt(f * (1 - f) / n) if n else 0.0 for f in self.frequencies]

    @property
    def reference(self) -> list[float]:
        """Mean conditional cell probability over the tallied events."""
        n = self.total
        return [e / n if n else 0.0 for e in self.expected]

    @property
    def z_scores(self) -> list[float]:
        out = []
        for c, e, v in zip(self.counts, self.expected, self.variance):
            if v > 0:
                out.append((c - e) / math.sqrt(v))
            else:
                out.append(0.0 if abs(c - e) < 1e-9 else math.inf)
        return out

    def to_dict(self) -> dict:
        return {
            "cells": self.cells,
            "counts": list(self.counts),
            "total": self.total,
            "frequencies": self.frequencies,
            "stderr": self.stderr,
            "reference": self.reference,
            "z_scores": self.z_scores,
        }


@dataclass(frozen=True)
class SortedFrequencies:
    setup: str
    n_events: int
    n_used: int
    n_lost: int
    n_out_of_window: int
    classes: dict[str, ClassTally]
    max_order_gap: float
    order: str = "chronological"

    def to_dict(self) -> dict:
        return {
            "setup": self.setup,
            "order": self.order,
            "n_events": self.n_events,
            "n_used": self.n_used,
            "n_lost": self.n_lost,
            "n_out_of_window": self.n_out_of_window,
            "max_order_gap": self.max_order_gap,
            "classes": {k: v.to_dict() for k, v in self.classes.items()},
        }


# ---------------------------------------------------------------------------
# event generation


@dataclass
class _Block:
    """Per-event arrays for one contiguous range of events."""

    kind_l: np.ndarray
    kind_r: np.ndarray
    t_l: np.ndarray
    t_r: np.ndarray
    usable: np.ndarray
    cls: np.ndarray  # index into CLASSES
    cell: np.ndarray  # 0..3, row-major (left label, right label)
    probs: np.ndarray  # (n, 4) probabilities of the cell that was sampled from
    in_window: np.ndarray
    order_gap: float = 0.0


def _side_loglik(kind, t, comp_rate_s, comp_rate_l):
    """log-likelihood of the observed time under K_S (col 0) and K_L (col 1)."""
    rates = np.array([comp_rate_s, comp_rate_l])
    survive = -rates[None, :] * t[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        decay = np.log(rates)[None, :] - rates[None, :] * t[:, None]
    out = np.where((kind == ACTIVE_STRANGENESS)[:, None], survive, decay)
    return np.where(np.isfinite(t)[:, None], out, -np.inf)


def _strangeness_given_component(n: int) -> np.ndarray:
    """(n, 2 components, 2 labels): K0/K0bar probabilities of a K_S or K_L.

    Without CP violation K_S and K_L are eigenvectors of the evolution, so
    their strangeness content does not change with time.
    """
    k1, k2 = cp_eigenstates()
    table = np.abs(np.vstack([k1.vector, k2.vector])) ** 2
    return np.broadcast_to(table, (n, 2, 2))


def _lifetime_given_component(kind: np.ndarray, fixed_label: np.ndarray) -> np.ndarray:
    """(n, 2 components, 2 labels) for lifetime read-outs."""
    n = kind.shape[0]
    out = np.zeros((n, 2, 2))
    passive = kind == PASSIVE_LIFETIME
    # pionic mode names the component itself
    out[passive, 0, 0] = 1.0
    out[passive, 1, 1] = 1.0
    # decay-time classification ignores the component
    active = ~passive
    lbl = np.clip(fixed_label, 0, 1)
    out[active, 0, lbl[active]] = 1.0
    out[active, 1, lbl[active]] = 1.0
    return out


def _ordered_joints(f_left, f_right, weights):
    """Joint cell probabilities computed left-first and right-first.

    ``f_left[:, a, x]`` is P(left label x | assignment a), likewise ``f_right``;
    ``weights[:, a]`` the posterior of assignment a.
    """
    joint_terms = weights[:, :, None, None] * f_left[:, :, :, None] * f_right[:, :, None, :]
    pair_given = joint_terms.sum(axis=1)  # (n, 2, 2)

    marg_l = np.einsum("na,nax->nx", weights, f_left)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_r = np.where(marg_l[:, :, None] > 0, pair_given / marg_l[:, :, None], 0.0)
    left_first = marg_l[:, :, None] * cond_r

    marg_r = np.einsum("na,nay->ny", weights, f_right)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_l = np.where(marg_r[:, None, :] > 0, pair_given / marg_r[:, None, :], 0.0)
    right_first = cond_l * marg_r[:, None, :]
    return left_first, right_first


def _coherent_joints(params: PhysParams, t_l: np.ndarray, t_r: np.ndarray):
    """Born cell probabilities of the normalized pair at (t_l, t_r), both orders."""
    r = 1 / math.sqrt(2)
    m0 = np.array([[0, r], [-r, 0]], dtype=complex)
    ul = scaled_propagator_matrix(params, np.where(np.isfinite(t_l), t_l, 0.0))
    ur = scaled_propagator_matrix(params, np.where(np.isfinite(t_r), t_r, 0.0))
    m = ul @ m0 @ np.swapaxes(ur, -1, -2)
    w = np.abs(m) ** 2
    z = w.sum(axis=(1, 2))
    ok = z > 0
    w = np.where(ok[:, None, None], w / np.where(ok, z, 1.0)[:, None, None], 0.0)

    marg_l = w.sum(axis=2)
    marg_r = w.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_r = np.where(marg_l[:, :, None] > 0, w / marg_l[:, :, None], 0.0)
        cond_l = np.where(marg_r[:, None, :] > 0, w / marg_r[:, None, :], 0.0)
    return marg_l[:, :, None] * cond_r, cond_l * marg_r[:, None, :], ok


def _first_side_is_left(order: str, t_l: np.ndarray, t_r: np.ndarray) -> np.ndarray:
    if order == "left-first":
        return np.ones(t_l.shape, bool)
    if order == "right-first":
        return np.zeros(t_l.shape, bool)
    earlier_left = t_l <= t_r
    return earlier_left if order == "chronological" else ~earlier_left


def _simulate(config: EraserConfig, params: PhysParams, start: int, stop: int, order: str) -> _Block:
    params = params.cp_conserving()
    u = streams.event_uniforms(config.seed, start, stop)
    n = stop - start
    g_s, g_l = params.gamma_s, params.gamma_l
    b = config.branching_semileptonic

    # stage one: which side is K_S, and the decay clocks
    left_is_s = u[:, streams.SLOT_ASSIGN] < 0.5
    tau_l = exponential_times(u[:, streams.SLOT_TIME_LEFT], np.where(left_is_s, g_s, g_l))
    tau_r = exponential_times(u[:, streams.SLOT_TIME_RIGHT], np.where(left_is_s, g_l, g_s))

    fixed_l = np.full(n, -1)
    fixed_r = np.full(n, -1)

    if config.setup in ("a", "b", "c"):
        kind_l = np.full(n, ACTIVE_STRANGENESS)
        t_l = np.full(n, float(config.t_l))
        usable_l = tau_l >= config.t_l
    else:
        semi = u[:, streams.SLOT_MODE_LEFT] < b
        kind_l = np.where(semi, PASSIVE_STRANGENESS, PASSIVE_LIFETIME)
        t_l = tau_l
        usable_l = np.isfinite(tau_l)

    if config.setup == "a":
        if config.meter == "random":
            strange = u[:, streams.SLOT_METER] < 0.5
        else:
            strange = np.full(n, config.meter == "strangeness")
        kind_r = np.where(strange, ACTIVE_STRANGENESS, ACTIVE_LIFETIME)
        t_r = np.where(strange, float(config.t_r0), tau_r)
        usable_r = tau_r >= config.t_r0
        fixed_r = np.where(tau_r - config.t_r0 < config.cut, 0, 1)
    elif config.setup == "b":
        decayed = tau_r < config.t_r0
        kind_r = np.where(decayed, ACTIVE_LIFETIME, ACTIVE_STRANGENESS)
        t_r = np.where(decayed, tau_r, float(config.t_r0))
        usable_r = np.ones(n, bool)
        # the decay watch starts at the source
        fixed_r = np.where(tau_r < config.cut, 0, 1)
    else:
        semi = u[:, streams.SLOT_MODE_RIGHT] < b
        kind_r = np.where(semi, PASSIVE_STRANGENESS, PASSIVE_LIFETIME)
        t_r = tau_r
        usable_r = np.isfinite(tau_r)

    usable = usable_l & usable_r
    basis_l = _KIND_BASIS[kind_l]
    basis_r = _KIND_BASIS[kind_r]
    cls = 2 * basis_l + basis_r

    # stage two: conditional cell probabilities
    first_left = _first_side_is_left(order, t_l, t_r)
    probs = np.zeros((n, 4))
    gap = 0.0

    ss = usable & (cls == 0)
    if ss.any():
        lf, rf, ok = _coherent_joints(params, t_l[ss], t_r[ss])
        chosen = np.where(first_left[ss][:, None, None], lf, rf)
        probs[ss] = chosen.reshape(-1, 4)
        usable[np.flatnonzero(ss)[~ok]] = False
        if ok.any():
            gap = max(gap, float(np.max(np.abs(lf[ok] - rf[ok]))))

    mixed = usable & (cls != 0)
    if mixed.any():
        idx = np.flatnonzero(mixed)
        ll_l = _side_loglik(kind_l[idx], t_l[idx], g_s, g_l)
        ll_r = _side_loglik(kind_r[idx], t_r[idx], g_s, g_l)
        # assignment 0: left K_S / right K_L; assignment 1: the reverse
        w0 = ll_l[:, 0] + ll_r[:, 1]
        w1 = ll_l[:, 1] + ll_r[:, 0]
        with np.errstate(invalid="ignore"):
            post0 = expit(w0 - w1)
        post0 = np.where(np.isnan(post0), 0.5, post0)
        weights = np.column_stack([post0, 1.0 - post0])

        def side_table(kind, fixed, basis):
            strange = _strangeness_given_component(len(kind))
            life = _lifetime_given_component(kind, fixed)
            return np.where((basis == 0)[:, None, None], strange, life)

        # tables are indexed by component; the right side holds K_L under assignment 0
        f_l = side_table(kind_l[idx], fixed_l[idx], basis_l[idx])
        f_r = side_table(kind_r[idx], fixed_r[idx], basis_r[idx])[:, ::-1, :]
        lf, rf = _ordered_joints(f_l, f_r, weights)
        chosen = np.where(first_left[idx][:, None, None], lf, rf)
        probs[idx] = chosen.reshape(-1, 4)
        gap = max(gap, float(np.max(np.abs(lf - rf))))

    cum = np.cumsum(probs, axis=1)
    cell = (cum[:, :3] <= u[:, streams.SLOT_OUTCOME][:, None]).sum(axis=1)

    if config.dt_window is None:
        in_window = np.ones(n, bool)
    else:
        with np.errstate(invalid="ignore"):
            in_window = (cls != 0) | (np.abs((t_l - t_r) - config.delta_t) <= 0.5 * config.dt_window)

    return _Block(kind_l, kind_r, t_l, t_r, usable, cls, cell, probs, in_window, gap)


@dataclass
class _Tally:
    counts: np.ndarray = field(default_factory=lambda: np.zeros((4, 4), dtype=np.int64))
    expected: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    variance: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    n: int = 0
    lost: int = 0
    out_of_window: int = 0
    gap: float = 0.0


def _tally_block(blk: _Block) -> _Tally:
    t = _Tally()
    t.n = blk.usable.shape[0]
    t.lost = int((~blk.usable).sum())
    t.out_of_window = int((blk.usable & ~blk.in_window).sum())
    keep = blk.usable & blk.in_window
    for c in range(4):
        m = keep & (blk.cls == c)
        t.counts[c] = np.bincount(blk.cell[m], minlength=4)
        p = blk.probs[m]
        t.expected[c] = p.sum(axis=0)
        t.variance[c] = (p * (1 - p)).sum(axis=0)
    t.gap = blk.order_gap
    return t


def _run_blocks(config, params, blocks, order) -> list[tuple[int, _Tally]]:
    return [(k, _tally_block(_simulate(config, params, lo, hi, order))) for k, lo, hi in blocks]


def _merge(results: list[tuple[int, _Tally]]) -> _Tally:
    results = sorted(results, key=lambda kv: kv[0])
    tallies = [t for _, t in results]
    out = _Tally()
    out.counts = sum((t.counts for t in tallies), np.zeros((4, 4), dtype=np.int64))
    # fsum is exactly rounded, so the float totals do not depend on grouping
    for c in range(4):
        for j in range(4):
            out.expected[c, j] = math.fsum(t.expected[c, j] for t in tallies)
            out.variance[c, j] = math.fsum(t.variance[c, j] for t in tallies)
    out.n = sum(t.n for t in tallies)
    out.lost = sum(t.lost for t in tallies)
    out.out_of_window = sum(t.out_of_window for t in tallies)
    out.gap = max((t.gap for t in tallies), default=0.0)
    return out


def _check_params(params: PhysParams) -> None:
    if not params.gamma_s > 0:
        raise ConfigurationError("the eraser needs decaying kaons (gamma_s > 0)")


def run_setup(
    config: EraserConfig,
    params: PhysParams,
    shards: int = 1,
    workers: int = 1,
    order: str = "chronological",
) -> SortedFrequencies:
    """Generate ``config.n_events`` pairs and sort them into measurement classes.

    ``shards`` groups of blocks are generated independently (``workers``
    threads at a time) and merged.  Results do not depend on either number.
    """
    _check_params(params)
    if order not in ORDERS:
        raise ConfigurationError(f"order must be one of {ORDERS}, got {order!r}")
    if shards < 1 or workers < 1:
        raise ConfigurationError("shards and workers must be >= 1")
    blocks = streams.block_ranges(int(config.n_events))
    groups = [list(g) for g in np.array_split(np.arange(len(blocks)), min(shards, len(blocks)))]
    jobs = [[blocks[i] for i in g] for g in groups if len(g)]

    if workers == 1:
        parts = [_run_blocks(config, params, job, order) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _run_blocks(config, params, job, order), jobs))
    merged = _merge([kv for part in parts for kv in part])

    classes = {
        name: ClassTally(
            name,
            tuple(int(x) for x in merged.counts[i]),
            tuple(float(x) for x in merged.expected[i]),
            tuple(float(x) for x in merged.variance[i]),
        )
        for i, name in enumerate(CLASSES)
    }
    return SortedFrequencies(
        setup=config.setup,
        n_events=merged.n,
        n_used=merged.n - merged.lost - merged.out_of_window,
        n_lost=merged.lost,
        n_out_of_window=merged.out_of_window,
        classes=classes,
        max_order_gap=merged.gap,
        order=order,
    )


def generate_events(
    config: EraserConfig, params: PhysParams, order: str = "chronological"
) -> list[EventRecord]:
    """Event-level records of the usable pairs (meant for small runs)."""
    _check_params(params)
    blk = _simulate(config, params, 0, int(config.n_events), order)
    out = []
    for i in np.flatnonzero(blk.usable & blk.in_window):
        left_labels, right_labels = (_BASIS_LABELS[b] for b in _CLASS_BASES[CLASSES[blk.cls[i]]])
        li, ri = divmod(int(blk.cell[i]), 2)
        out.append(
            EventRecord(
                KIND_NAMES[blk.kind_l[i]],
                KIND_NAMES[blk.kind_r[i]],
                left_labels[li],
                right_labels[ri],
                float(blk.t_l[i]),
                float(blk.t_r[i]),
            )
        )
    return out


def surviving_pair_reference(params: PhysParams, delta_t: float) -> dict[str, float]:
    """Strangeness cell probabilities of surviving pairs at delta_t (closed form)."""
    same, opposite = surviving_pair_coefficients(params.cp_conserving(), delta_t)
    s2, o2 = abs(same) ** 2, abs(opposite) ** 2
    return {"K0,K0": s2, "K0,K0bar": o2, "K0bar,K0": o2, "K0bar,K0bar": s2}


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class DelayedChoiceReport:
    first: SortedFrequencies
    second: SortedFrequencies
    cell_z: dict[str, list[float]]
    max_abs_z: float
    max_analytic_gap: float
    compatible: bool

    def to_dict(self) -> dict:
        return {
            "orders": [self.first.order, self.second.order],
            "cell_z": self.cell_z,
            "max_abs_z": self.max_abs_z,
            "max_analytic_gap": self.max_analytic_gap,
            "compatible": self.compatible,
            "frequencies": {self.first.order: self.first.to_dict(), self.second.order: self.second.to_dict()},
        }


def _two_sample_z(c1, n1, c2, n2) -> float:
    if n1 == 0 or n2 == 0:
        return 0.0
    f1, f2 = c1 / n1, c2 / n2
    pooled = (c1 + c2) / (n1 + n2)
    var = pooled * (1 - pooled) * (1 / n1 + 1 / n2)
    if var == 0:
        return 0.0 if f1 == f2 else math.inf
    return (f1 - f2) / math.sqrt(var)


def delayed_choice_check(
    config: EraserConfig,
    params: PhysParams,
    orders: tuple[str, str] = ("chronological", "reverse"),
    n_sigma: float = 4.0,
    shards: int = 1,
) -> DelayedChoiceReport:
    """Run one setup under two collapse orderings with the same random numbers."""
    a = run_setup(config, params, shards=shards, order=orders[0])
    b = run_setup(config, params, shards=shards, order=orders[1])
    cell_z = {}
    for name in CLASSES:
        ta, tb = a.classes[name], b.classes[name]
        cell_z[name] = [_two_sample_z(x, ta.total, y, tb.total) for x, y in zip(ta.counts, tb.counts)]
    max_z = max(abs(z) for zs in cell_z.values() for z in zs)
    gap = max(a.max_order_gap, b.max_order_gap)
    return DelayedChoiceReport(a, b, cell_z, max_z, gap, max_z < n_sigma and gap < 1e-12)


@dataclass(frozen=True)
class SetupComparison:
    setups: list[str]
    table: list[list[int]]
    statistic: float
    dof: int
    p_value: float
    equivalent: bool
    empty_setups: list[str]

    def to_dict(self) -> dict:
        return {
            "setups": self.setups,
            "cells": ClassTally("SS", (0,) * 4, (0.0,) * 4, (0.0,) * 4).cells,
            "table": self.table,
            "chi2": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "equivalent": self.equivalent,
            "empty_setups": self.empty_setups,
        }


def chi_square_equality(results: dict[str, SortedFrequencies], p_min: float = EQUIVALENCE_P_MIN) -> SetupComparison:
    """Chi-square homogeneity test of the strangeness-strangeness cells across setups."""
    names = list(results)
    table = np.array([results[s].classes["SS"].counts for s in names], dtype=float)
    empty = [s for s, row in zip(names, table) if row.sum() == 0]
    rows = table[table.sum(axis=1) > 0]
    rows = rows[:, rows.sum(axis=0) > 0] if rows.size else rows
    if rows.shape[0] < 2 or rows.shape[1] < 2:
        stat, dof, p = 0.0, 0, 1.0
    else:
        res = stats.chi2_contingency(rows, correction=False)
        stat, dof, p = float(res[0]), int(res[2]), float(res[1])
    return SetupComparison(names, table.astype(int).tolist(), stat, dof, p, p > p_min, empty)


def setup_seed(seed: int, setup: str) -> int:
    """Independent 64-bit seed for one setup in a comparison.

    The homogeneity test assumes independent samples, so setups that would
    otherwise share random numbers (a and b do) get their own streams.
    """
    ss = np.random.SeedSequence([int(seed), SETUPS.index(setup)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def compare_setups(
    config: EraserConfig,
    params: PhysParams,
    setups=SETUPS,
    shards: int = 1,
) -> tuple[dict[str, SortedFrequencies], SetupComparison]:
    """Run several setups with otherwise identical settings and test SS equality."""
    results = {}
    for s in setups:
        meter = config.meter if s == "a" else "strangeness"
        cfg = replace(config, setup=s, meter=meter, seed=setup_seed(config.seed, s))
        results[s] = run_setup(cfg, params, shards=shards)
    return results, chi_square_equality(results)
