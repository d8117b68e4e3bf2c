"""Matrix-model sampling and empirical validation of spectral densities.

Samplers draw the Gaussian Hermitian ensemble (H2), complex Ginibre
rectangles whose squared singular values give the half-line Laguerre
ensemble (M), and Gaussian real antisymmetric matrices whose squared
spectra give the nu = -1/2 (even dimension) and nu = +1/2 (odd) cases.
Entry scales are pinned so the sampled spectra follow the unit-scale
catalog weights; the moment oracles in the tests check the calibration.

Sampling is split into fixed-size counter blocks, each driven by its own
Philox stream keyed by (seed, block index).  Results are concatenated in
block order, so spectra are reproducible bit for bit regardless of how
many worker threads run the blocks.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import math
import os

import numpy as np

from . import eigh
from .errors import UsageError

_BLOCK = 8192


def thread_count():
    """Worker cap: POLYA_KERNELS_THREADS if set, else machine parallelism."""
    raw = os.environ.get("POLYA_KERNELS_THREADS", "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError("POLYA_KERNELS_THREADS must be an integer")
    if k < 1:
        raise UsageError("POLYA_KERNELS_THREADS must be at least 1")
    return k


@dataclasses.dataclass(frozen=True)
class SampleBatch:
    """Spectra drawn from one matrix model.

    spectra[i] holds the sorted eigenvalues (H2) or squared singular
    values (M, H1) of sample i.
    """
    spectra: np.ndarray
    space: str
    n: int
    nu: float
    seed: int
    count: int


def _block_rng(seed, block):
    key = np.array([seed, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _run_blocks(count, worker):
    sizes = []
    left = int(count)
    while left > 0:
        sizes.append(min(_BLOCK, left))
        left -= sizes[-1]
    jobs = list(enumerate(sizes))
    threads = min(thread_count(), len(jobs))
    if threads <= 1:
        parts = [worker(b, m) for b, m in jobs]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda bm: worker(*bm), jobs))
    return np.concatenate(parts, axis=0)


def _gue_matrices(rng, m, n, v):
    g = rng.normal(size=(m, n, n)) + 1j * rng.normal(size=(m, n, n))
    h = 0.5 * (g + np.conj(np.swapaxes(g, 1, 2)))
    return math.sqrt(v) * h


def sample_h2_gaussian(n, v, shift=None, count=1, seed=0):
    """Spectra of the Gaussian Hermitian ensemble with weight e^(-x^2/(2v)).

    Diagonal entries are real N(0, v), off-diagonal complex with total
    variance v, so the matrix density is exp(-tr X^2 / (2v)).  The shift
    config adds a fixed diagonal matrix or an independently sampled
    Gaussian second matrix.
    """
    n = int(n)
    if count < 1:
        raise UsageError("sample count must be at least 1")
    if v <= 0.0:
        raise UsageError("variance must be positive")
    x_fixed = None
    v_second = None
    if shift is not None and shift.mode != "none":
        if shift.mode == "fixed":
            if len(shift.x) != n:
                raise UsageError("fixed shift needs n eigenvalues")
            x_fixed = np.asarray(shift.x, dtype=float)
        else:
            sw = shift.second.weight
            if sw.family != "gaussian":
                raise UsageError("only gaussian second ensembles are samplable")
            v_second = sw.variance

    def worker(block, m):
        rng = _block_rng(seed, block)
        h = _gue_matrices(rng, m, n, v)
        if x_fixed is not None:
            h += np.diag(x_fixed)[None, :, :]
        if v_second is not None:
            h += _gue_matrices(rng, m, n, v_second)
        return eigh.eigvalsh_batch(h)

    spectra = _run_blocks(count, worker)
    return SampleBatch(spectra=spectra, space="H2", n=n, nu=0.0,
                       seed=int(seed), count=int(count))


def sample_m_ginibre(n, nu, count=1, seed=0):
    """Squared singular values of complex n x (n+nu) Ginibre matrices.

    Entries have unit complex variance, so the spectra follow the
    laguerre_m(nu, scale=1) catalog weight.
    """
    n = int(n)
    if count < 1:
        raise UsageError("sample count must be at least 1")
    if nu != int(nu) or nu < 0:
        raise UsageError("Ginibre sampling needs nu in 0, 1, 2, ...")
    nu = int(nu)

    def worker(block, m):
        rng = _block_rng(seed, block)
        w = (rng.normal(size=(m, n, n + nu))
             + 1j * rng.normal(size=(m, n, n + nu))) / math.sqrt(2.0)
        gram = w @ np.conj(np.swapaxes(w, 1, 2))
        return np.maximum(eigh.eigvalsh_batch(gram), 0.0)

    spectra = _run_blocks(count, worker)
    return SampleBatch(spectra=spectra, space="M", n=n, nu=float(nu),
                       seed=int(seed), count=int(count))


def sample_h1_gaussian(n_half, parity="even", count=1, seed=0):
    """Squared spectra of Gaussian real antisymmetric matrices.

    Dimension 2*n_half (even) or 2*n_half+1 (odd); entry standard
    deviation 1/sqrt(2), which puts the n_half nonzero squared
    eigenvalues on the laguerre_m weight x^nu e^(-x) with nu = -1/2
    (even) or +1/2 (odd).  The odd case's exact zero mode is dropped.
    """
    n_half = int(n_half)
    if n_half < 1:
        raise UsageError("n_half must be at least 1")
    if parity not in ("even", "odd"):
        raise UsageError("parity must be even or odd")
    if count < 1:
        raise UsageError("sample count must be at least 1")
    dim = 2 * n_half + (1 if parity == "odd" else 0)

    def worker(block, m):
        rng = _block_rng(seed, block)
        g = rng.normal(scale=math.sqrt(0.5), size=(m, dim, dim))
        a = g - np.swapaxes(g, 1, 2)
        # entries a_ij (i < j) are N(0, 1); the matched weight scale
        # comes from x = sum of squares of N(0, 1/2)-scaled couplings
        a *= math.sqrt(0.5)
        b = a @ np.swapaxes(a, 1, 2)
        lam = eigh.eigvalsh_batch(b)
        return np.maximum(lam[:, 1::2], 0.0)

    spectra = _run_blocks(count, worker)
    nu = -0.5 if parity == "even" else 0.5
    return SampleBatch(spectra=spectra, space="M", n=n_half, nu=nu,
                       seed=int(seed), count=int(count))


@dataclasses.dataclass(frozen=True)
class Histogram:
    """Uniform-bin histogram on the density scale (integrates to n)."""
    edges: np.ndarray
    counts: np.ndarray
    heights: np.ndarray


def empirical_density(batch, bins, lo=None, hi=None):
    """Histogram of all spectrum points, normalized to integrate to n."""
    bins = int(bins)
    if bins < 10:
        raise UsageError("use at least 10 bins")
    data = np.asarray(batch.spectra, dtype=float).ravel()
    if lo is None:
        lo = float(np.min(data))
    if hi is None:
        hi = float(np.max(data))
    if not hi > lo:
        raise UsageError("histogram range must have hi > lo")
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(data, bins=edges)
    width = edges[1] - edges[0]
    heights = counts / (batch.count * width)
    return Histogram(edges=edges, counts=counts, heights=heights)


def jpdf_compare_2d(cfg, batch, grid):
    """Worst cell deviation, in Poisson sigmas, between a 2-D histogram of
    sorted sample pairs and the ordered-region mass of the joint density.

    cfg is the n=2 ensemble the batch was drawn from; grid is the shared
    cell-edge vector for both axes.  Cells expecting fewer than ten
    samples are skipped (the Gaussian reading of a Poisson count needs
    some mass behind it).
    """
    from . import ensembles, quadrature

    if cfg.n != 2 or batch.n != 2:
        raise UsageError("the 2-D comparison is defined for n = 2")
    edges = np.asarray(grid, dtype=float)
    if edges.ndim != 1 or edges.size < 3 or np.any(np.diff(edges) <= 0.0):
        raise UsageError("grid must be an increasing vector of cell edges")
    lo = np.sort(np.asarray(batch.spectra, dtype=float), axis=1)
    counts, _, _ = np.histogram2d(lo[:, 0], lo[:, 1], bins=(edges, edges))

    rule = quadrature.gauss_legendre_rule(4)
    tn = np.asarray(rule.nodes)
    tw = np.asarray(rule.weights)
    m = edges.size - 1
    worst = 0.0
    for a in range(m):
        xa = 0.5 * (edges[a] + edges[a + 1]) + 0.5 * (edges[a + 1] - edges[a]) * tn
        wa = 0.5 * (edges[a + 1] - edges[a]) * tw
        for b in range(a, m):
            xb = 0.5 * (edges[b] + edges[b + 1]) + 0.5 * (edges[b + 1] - edges[b]) * tn
            wb = 0.5 * (edges[b + 1] - edges[b]) * tw
            g1, g2 = np.meshgrid(xa, xb, indexing="ij")
            pts = np.column_stack([g1.ravel(), g2.ravel()])
            vals = 2.0 * ensembles._jpdf_batch(cfg, pts)
            if b == a:
                vals = np.where(pts[:, 1] >= pts[:, 0], vals, 0.0)
            mass = float(np.sum(vals * (wa[:, None] * wb[None, :]).ravel()))
            expect = batch.count * mass
            if expect < 10.0:
                continue
            dev = abs(counts[a, b] - expect) / math.sqrt(expect)
            worst = max(worst, dev)
    return worst
