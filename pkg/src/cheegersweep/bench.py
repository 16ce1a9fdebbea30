"""Corpus harness comparing the classical sweep with the randomized sweep.

Each graph gets the classical sweep on its Fiedler vector and the best of
``n - 1`` (or ``n**2``) randomized draws on the same vector. The difference
``delta_h = h_random - h_classical`` against ``lambda1`` is the plot feed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .cheeger import exact_cheeger
from .graph import Graph, GraphError, generate, is_connected, read_edge_list
from .spectral import ConvergenceError, spectrum
from .sweep import NoValidCutError, classical_sweep, random_sweep

__all__ = [
    "CorpusEntry",
    "CorpusSpec",
    "BenchRecord",
    "MODES",
    "CSV_HEADER",
    "RED_LINE",
    "REFERENCE_FRACTIONS",
    "parse_corpus",
    "read_corpus",
    "default_corpus",
    "verification_corpus",
    "resolve_source",
    "derive_seed",
    "trials_for",
    "run_corpus",
    "summarize",
    "emit_csv",
    "format_csv",
    "read_csv",
]

MODES = ("n_minus_1", "n_squared")
CSV_HEADER = ["name", "n", "vol_g", "lambda1", "v_inf", "h_classical", "h_random", "delta_h", "h_exact", "mode"]
RED_LINE = 1.0 / 8.0
STRICT_TOL = 1e-12
BENCH_EXACT_LIMIT = 20
WORKERS_ENV = "CHEEGERSWEEP_WORKERS"

# Fractions reported for the named-graph database (tied-or-better, strictly better).
# Shown for context only; that corpus is not available here.
REFERENCE_FRACTIONS = {"n_minus_1": (0.34, 0.039), "n_squared": (0.51, 0.19)}


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str


@dataclass
class CorpusSpec:
    entries: list[CorpusEntry]
    n_min: int = 0
    n_max: int | None = None
    seed: int = 0
    base_dir: Path | None = None

    def __post_init__(self):
        names = [e.name for e in self.entries]
        dupes = sorted({x for x in names if names.count(x) > 1})
        if dupes:
            raise CorpusError(f"duplicate corpus names: {dupes}")


def derive_seed(master: int, *parts) -> int:
    """Stable 64-bit seed from a master seed and labels."""
    key = ":".join([str(int(master))] + [str(p) for p in parts]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def _value(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    raise CorpusError(f"cannot parse parameter value {text!r}")


def parse_generator(source: str) -> tuple[str, dict]:
    """``gen:kind key=value ...`` to ``(kind, params)``."""
    body = source[len("gen:"):].split()
    if not body:
        raise CorpusError(f"empty generator spec {source!r}")
    params = {}
    for tok in body[1:]:
        key, sep, val = tok.partition("=")
        if not sep:
            raise CorpusError(f"expected key=value, got {tok!r}")
        params[key] = _value(val)
    return body[0], params


def resolve_source(source: str, name: str = "", master_seed: int = 0, base_dir=None) -> Graph:
    if source.startswith("gen:"):
        kind, params = parse_generator(source)
        seed = params.pop("seed", None)
        if seed is None and kind in ("gnp", "random_regular"):
            seed = derive_seed(master_seed, "graph", name)
        return generate(kind, seed=seed, **params)
    path = Path(source)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    return read_edge_list(path)


def parse_corpus(text: str, base_dir=None, **kwargs) -> CorpusSpec:
    """Parse the ``name<TAB>source`` corpus format."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise CorpusError(f"line {lineno}: expected 'name<TAB>source'")
        name, source = (part.strip() for part in line.split("\t", 1))
        if not name or not source:
            raise CorpusError(f"line {lineno}: empty name or source")
        entries.append(CorpusEntry(name, source))
    return CorpusSpec(entries, base_dir=Path(base_dir) if base_dir else None, **kwargs)


def read_corpus(path, **kwargs) -> CorpusSpec:
    path = Path(path)
    return parse_corpus(path.read_text(encoding="utf-8"), base_dir=path.parent, **kwargs)


def format_corpus(spec: CorpusSpec) -> str:
    return "".join(f"{e.name}\t{e.source}\n" for e in spec.entries)


def default_corpus(seed: int = 0) -> CorpusSpec:
    """Named families plus seeded random graphs, with λ₁ on both sides of 1/8."""
    src = []
    for n in (10, 14, 20, 32):
        src.append((f"path_{n}", f"gen:path n={n}"))
    for n in (10, 15, 20, 32):
        src.append((f"cycle_{n}", f"gen:cycle n={n}"))
    for n in (10, 16):
        src.append((f"complete_{n}", f"gen:complete n={n}"))
    for k in (10, 15):
        src.append((f"star_{k}", f"gen:star k={k}"))
    for a, b in ((5, 5), (4, 8), (3, 12)):
        src.append((f"complete_bipartite_{a}_{b}", f"gen:complete_bipartite a={a} b={b}"))
    for dim in (4, 5):
        src.append((f"hypercube_{dim}", f"gen:hypercube dim={dim}"))
    src.append(("petersen", "gen:petersen"))
    for n in (12, 16, 20, 30, 40):
        for p in (0.2, 0.35, 0.6):
            for rep in range(2):
                src.append((f"gnp_{n}_{p}_{rep}", f"gen:gnp n={n} p={p}"))
    for n in (12, 20, 30, 40):
        for d in (3, 4, 6):
            src.append((f"regular_{n}_{d}", f"gen:random_regular n={n} d={d}"))
    return CorpusSpec([CorpusEntry(a, b) for a, b in src], n_min=10, n_max=64, seed=seed)


def verification_corpus(seed: int = 0, n_max: int = 20) -> list[tuple[str, Graph]]:
    """Connected graphs with ``n <= n_max`` for checking inequalities exactly."""
    out = []
    for n in range(2, n_max + 1):
        out.append((f"path_{n}", generate("path", n=n)))
        out.append((f"complete_{n}", generate("complete", n=n)))
        out.append((f"star_{n - 1}", generate("star", k=n - 1)))
        if n >= 3:
            out.append((f"cycle_{n}", generate("cycle", n=n)))
    for a in range(1, 6):
        for b in range(a, 9):
            if a + b <= n_max and a + b >= 3:
                out.append((f"complete_bipartite_{a}_{b}", generate("complete_bipartite", a=a, b=b)))
    for dim in (1, 2, 3, 4):
        if 1 << dim <= n_max:
            out.append((f"hypercube_{dim}", generate("hypercube", dim=dim)))
    out.append(("petersen", generate("petersen")))
    for n in range(6, n_max + 1, 2):
        for p in (0.25, 0.4, 0.7):
            for rep in range(100):
                g = generate("gnp", seed=derive_seed(seed, "verify", n, p, rep), n=n, p=p)
                if is_connected(g):
                    out.append((f"gnp_{n}_{p}", g))
                    break
    for n, d in ((10, 3), (12, 3), (14, 4), (16, 3), (18, 5), (20, 4)):
        if n <= n_max:
            g = generate("random_regular", seed=derive_seed(seed, "verify-reg", n, d), n=n, d=d)
            if is_connected(g):
                out.append((f"regular_{n}_{d}", g))
    return out


# ---------------------------------------------------------------------------
# records


@dataclass
class BenchRecord:
    name: str
    n: int
    vol_g: int
    mode: str
    lambda1: float = math.nan
    v_inf: float = math.nan
    h_classical: float = math.nan
    h_random: float = math.nan
    delta_h: float = math.nan
    h_exact: float | None = None
    runtime_ms: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def trials_for(n: int, mode: str) -> int:
    if mode == "n_minus_1":
        return max(n - 1, 1)
    if mode == "n_squared":
        return n * n
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _bench_one(name: str, g: Graph, mode: str, delta: float, seed: int, exact_limit: int) -> BenchRecord:
    rec = BenchRecord(name=name, n=g.n, vol_g=g.volume_total, mode=mode)
    if not is_connected(g):
        rec.error = "disconnected"
        return rec
    clock = time.perf_counter()
    try:
        sd = spectrum(g)
    except ConvergenceError as exc:
        rec.error = f"eigensolver: {exc}"
        return rec
    rec.runtime_ms["spectrum"] = 1e3 * (time.perf_counter() - clock)
    rec.lambda1, rec.v_inf = sd.lambda1, sd.v_inf

    clock = time.perf_counter()
    rec.h_classical = classical_sweep(g, sd.fiedler).best.ratio
    rec.runtime_ms["classical"] = 1e3 * (time.perf_counter() - clock)

    clock = time.perf_counter()
    try:
        rec.h_random = random_sweep(g, sd.fiedler, trials_for(g.n, mode), delta, seed).best.ratio
    except NoValidCutError:
        rec.h_random = math.inf
    rec.runtime_ms["random"] = 1e3 * (time.perf_counter() - clock)
    rec.delta_h = rec.h_random - rec.h_classical

    if g.n <= exact_limit:
        clock = time.perf_counter()
        rec.h_exact = exact_cheeger(g, limit=exact_limit)[0]
        rec.runtime_ms["exact"] = 1e3 * (time.perf_counter() - clock)
    return rec


def _bench_task(args):
    return _bench_one(*args)


def _resolve_all(spec: CorpusSpec):
    graphs = []
    for entry in spec.entries:
        try:
            g = resolve_source(entry.source, entry.name, spec.seed, spec.base_dir)
        except (OSError, GraphError, ValueError) as exc:
            raise CorpusError(f"cannot resolve corpus entry {entry.name!r}: {exc}") from exc
        if g.n < spec.n_min or (spec.n_max is not None and g.n > spec.n_max):
            continue
        graphs.append((entry.name, g))
    return graphs


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_corpus(spec: CorpusSpec, mode: str = "n_minus_1", delta: float = 0.0,
               workers: int | None = None, exact_limit: int = BENCH_EXACT_LIMIT) -> list[BenchRecord]:
    """Bench every corpus graph; rows come back in corpus order.

    Every entry is resolved before any work starts. The random-sweep seed of a
    graph depends only on the master seed and the graph's name, so the
    ``n_squared`` run reuses the ``n_minus_1`` draws as its prefix.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not spec.entries:
        raise CorpusError("empty corpus")
    graphs = _resolve_all(spec)
    tasks = [(name, g, mode, delta, derive_seed(spec.seed, "sweep", name), exact_limit) for name, g in graphs]
    workers = workers or default_workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_task, tasks))
    return [_bench_task(t) for t in tasks]


def summarize(records) -> dict:
    ok = [r for r in records if r.ok]
    if not ok:
        raise ValueError("no successful records to summarize")

    def fractions(rows):
        if not rows:
            return {"count": 0, "tied_or_better": None, "strictly_better": None}
        return {
            "count": len(rows),
            "tied_or_better": sum(r.delta_h <= 0 for r in rows) / len(rows),
            "strictly_better": sum(r.delta_h < -STRICT_TOL for r in rows) / len(rows),
        }

    modes = sorted({r.mode for r in ok})
    return {
        "records": len(records),
        "errors": [{"name": r.name, "error": r.error} for r in records if not r.ok],
        "modes": modes,
        "overall": fractions(ok),
        "lambda1_le_red_line": fractions([r for r in ok if r.lambda1 <= RED_LINE]),
        "lambda1_gt_red_line": fractions([r for r in ok if r.lambda1 > RED_LINE]),
        "red_line": RED_LINE,
        "reference_not_asserted": {m: REFERENCE_FRACTIONS[m] for m in modes if m in REFERENCE_FRACTIONS},
    }


# ---------------------------------------------------------------------------
# CSV


def _num(x):
    if x is None:
        return ""
    if isinstance(x, float) and math.isnan(x):
        return ""
    return repr(float(x)) if isinstance(x, float) else str(x)


def format_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.name, r.n, r.vol_g, _num(r.lambda1), _num(r.v_inf), _num(r.h_classical),
                         _num(r.h_random), _num(r.delta_h), _num(r.h_exact), r.mode])
    return buf.getvalue()


def emit_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(records))


def read_csv(path) -> list[BenchRecord]:
    def num(text):
        return float(text) if text != "" else math.nan

    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        for row in reader:
            out.append(BenchRecord(
                name=row["name"], n=int(row["n"]), vol_g=int(row["vol_g"]), mode=row["mode"],
                lambda1=num(row["lambda1"]), v_inf=num(row["v_inf"]),
                h_classical=num(row["h_classical"]), h_random=num(row["h_random"]),
                delta_h=num(row["delta_h"]),
                h_exact=float(row["h_exact"]) if row["h_exact"] else None,
                error=None if row["lambda1"] else "failed",
            ))
    return out
