"""Sweeps over N: exact counts next to the two competing predictions."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .counting import TernaryCounter, sandwich_counts
from .errors import ConfigError, DomainError, GoldbachError
from .quadratic import QuadraticIrrational, make_eta
from .series import predict_J, sigma_window, singular_series
from .sieve import MAX_LIMIT, constrained_set, primes_up_to
from .window import Window, parse_rational

CSV_HEADER = "N,pi,piP,J,I,sigma_n,sigma_window,pred,pred_naive,ratio,ratio_naive"
CSV_FIELDS = CSV_HEADER.split(",")
DEVIATION_THRESHOLD = 0.2


@dataclass
class SweepConfig:
    eta: QuadraticIrrational
    window: Window
    n_values: list[int]
    tol: float = 1e-10
    delta: float | None = None
    r: int | None = None
    format: str = "csv"
    threads: int = 1
    allow_even: bool = False

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepConfig":
        """Validate a JSON config document; errors name the offending field."""
        if not isinstance(doc, dict):
            raise ConfigError("<root>", "config must be a JSON object")
        if "eta" not in doc:
            raise ConfigError("eta", "missing")
        eta = _field("eta", parse_eta, doc["eta"])
        if "window" not in doc:
            raise ConfigError("window", "missing")
        window = _field("window", parse_window, doc["window"])
        if "n_spec" not in doc:
            raise ConfigError("n_spec", "missing")
        allow_even = bool(doc.get("allow_even", False))
        n_values = _field("n_spec", expand_n_spec, doc["n_spec"], allow_even)
        tol = _field("tol", float, doc.get("tol", 1e-10))
        if not tol > 0:
            raise ConfigError("tol", "must be positive")
        delta = doc.get("delta")
        r = doc.get("r")
        if (delta is None) != (r is None):
            raise ConfigError("delta" if delta is None else "r", "delta and r go together")
        if delta is not None:
            delta = _field("delta", float, delta)
            r = _field("r", int, r)
        fmt = doc.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError("format", f"unknown format {fmt!r}")
        threads = doc.get("threads", int(os.environ.get("GOLDBACH_THREADS", 1)))
        threads = _field("threads", int, threads)
        if threads < 1:
            raise ConfigError("threads", "must be >= 1")
        return cls(eta, window, n_values, tol, delta, r, fmt, threads, allow_even)


def _field(name, fn, *args):
    try:
        return fn(*args)
    except ConfigError as exc:
        raise ConfigError(f"{name}.{exc.field}" if exc.field else name, str(exc)) from exc
    except (GoldbachError, ValueError, TypeError, KeyError) as exc:
        raise ConfigError(name, str(exc)) from exc


def parse_eta(value) -> QuadraticIrrational:
    """``"p0,d,q0"`` or a three-element list."""
    if isinstance(value, str):
        value = value.split(",")
    parts = [int(v) for v in value]
    if len(parts) != 3:
        raise DomainError("eta needs three integers p0,d,q0")
    return make_eta(*parts)


def parse_window(value) -> Window:
    if isinstance(value, str):
        return Window.parse(value)
    if isinstance(value, dict):
        return Window(parse_rational(value["a"]), parse_rational(value["b"]))
    a, b = value
    return Window(parse_rational(a), parse_rational(b))


def expand_n_spec(spec, allow_even: bool = False) -> list[int]:
    """Explicit list, ``{start, end, step}`` range, or ``{sample: {...}}``.

    Ranges are inclusive. A sample draws ``count`` distinct admissible values
    from ``[start, end]`` with a seeded generator and returns them sorted.
    """
    def admissible(n):
        return allow_even or n % 2 == 1

    if isinstance(spec, list):
        values = [int(n) for n in spec]
        bad = [n for n in values if not admissible(n)]
        if bad:
            raise DomainError(f"even N {bad[0]} needs allow_even")
    elif isinstance(spec, dict) and "sample" in spec:
        s = spec["sample"]
        start, end, count = int(s["start"]), int(s["end"]), int(s["count"])
        pool = np.array([n for n in range(start, end + 1) if admissible(n)], dtype=np.int64)
        if count > len(pool):
            raise DomainError(f"cannot sample {count} values from {len(pool)}")
        rng = np.random.default_rng(int(s.get("seed", 0)))
        values = sorted(int(n) for n in rng.choice(pool, size=count, replace=False))
    elif isinstance(spec, dict):
        start, end, step = int(spec["start"]), int(spec["end"]), int(spec.get("step", 1))
        if step < 1:
            raise DomainError("step must be >= 1")
        values = [n for n in range(start, end + 1, step) if admissible(n)]
    else:
        raise DomainError("n_spec must be a list or an object")
    if not values:
        raise DomainError("n_spec selects no values")
    for n in values:
        if not 3 <= n <= MAX_LIMIT:
            raise DomainError(f"N={n} outside [3, 2**26]")
    return values


@dataclass
class SweepRow:
    N: int
    pi: int
    piP: int
    J: int
    I: int
    sigma_n: float
    sigma_window: float
    pred: float
    pred_naive: float
    ratio: float | None = None
    ratio_naive: float | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        out = {f: getattr(self, f) for f in CSV_FIELDS}
        for key in ("ratio", "ratio_naive"):
            if out[key] is None:
                del out[key]
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepRow":
        names = {f.name for f in fields(cls)} - {"extra"}
        known = {k: v for k, v in doc.items() if k in names}
        extra = {k: v for k, v in doc.items() if k not in names}
        return cls(**known, extra=extra)


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per N, in input order; the sieve and both pair tables are shared."""
    limit = max(config.n_values)
    table = primes_up_to(limit)
    cset = constrained_set(limit, config.eta, config.window, table)
    all_counter = TernaryCounter(table)
    win_counter = TernaryCounter(cset)
    pi_cum = np.cumsum(table.membership)
    piP_cum = np.cumsum(cset.membership)
    naive = float(config.window.width) ** 3

    def row(N: int) -> SweepRow:
        try:
            I = all_counter.count(N)
            J = win_counter.count(N)
            sigma_n = singular_series(N, config.tol).value
            # the truncated series may dip a rounding error below zero
            sw = max(0.0, sigma_window(config.eta, N, config.window, config.tol).value)
            pred = predict_J(I, sw)
            pred_naive = predict_J(I, naive)
            out = SweepRow(
                N, int(pi_cum[N]), int(piP_cum[N]), J, I, sigma_n, sw, pred, pred_naive,
                J / pred if pred > 0 else None,
                J / pred_naive if pred_naive > 0 else None,
            )
            if config.delta is not None:
                sand = sandwich_counts(N, config.eta, config.window, config.delta, config.r, table)
                out.extra = {"J1": sand.J1, "J2": sand.J2}
            return out
        except GoldbachError as exc:
            raise type(exc)(f"N={N}: {exc}") from exc

    if config.threads > 1:
        with ThreadPoolExecutor(config.threads) as pool:
            return list(pool.map(row, config.n_values))
    return [row(N) for N in config.n_values]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit(rows: list[SweepRow], format: str = "csv") -> bytes:
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for r in rows:
            writer.writerow([_fmt(getattr(r, f)) for f in CSV_FIELDS])
        return buf.getvalue().encode()
    if format == "json":
        return json.dumps([r.to_dict() for r in rows], indent=1).encode()
    raise DomainError(f"unknown format {format!r}")


def parse_rows(data: bytes) -> list[SweepRow]:
    return [SweepRow.from_dict(d) for d in json.loads(data)]


def headline_report(rows: list[SweepRow]) -> dict:
    """How far the exact counts sit from each model, over rows with ``pred > 0``."""
    usable = [r for r in rows if r.pred > 0 and r.pred_naive > 0]
    if len(usable) < 10:
        raise DomainError(f"headline_report needs >= 10 rows with pred > 0, got {len(usable)}")
    err = np.array([abs(r.ratio - 1) for r in usable])
    err_naive = np.array([abs(r.ratio_naive - 1) for r in usable])
    deviating = sum(
        abs(r.sigma_window / (r.pred_naive / r.I) - 1) >= DEVIATION_THRESHOLD for r in usable
    )
    return {
        "rows": len(usable),
        "mean_abs_ratio_err": float(err.mean()),
        "max_abs_ratio_err": float(err.max()),
        "mean_abs_ratio_naive_err": float(err_naive.mean()),
        "max_abs_ratio_naive_err": float(err_naive.max()),
        "rows_sigma_deviating": int(deviating),
    }
