"""Command-line interface for density tables, kernel tables, and checks.

Configs are JSON documents, given inline or as a file path:

    {"space": "H2", "n": 4,
     "weight": {"family": "gaussian", "variance": 1.0}, "shift": null}

    {"space": "M", "n": 3, "nu": 1,
     "weight": {"family": "laguerre_m", "scale": 1.0},
     "shift": {"type": "fixed", "x": [0.5, 1.5, 3.0]}}

The shift block is null / {"type": "none"}, {"type": "fixed", "x": [...]},
or {"type": "ensemble", "second": {weight block}} where the second weight
lives on the same space (and carries the same nu and n).

Exit codes: 0 success, 2 schema or usage problems, 3 accuracy failures,
4 I/O failures.  CSV output uses 17 significant digits and always carries
a header row; rerunning with the same config and seed reproduces the
output byte for byte.
"""

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import ensembles, montecarlo, quadrature, toeplitz, weights
from .errors import AccuracyError, DomainError, SchemaError, UsageError


# ---------------------------------------------------------------------------
# config parsing


_FAMILY_SPACE = {
    "gaussian": "H2",
    "laguerre_h2": "H2",
    "polya_product": "H2",
    "laguerre_m": "M",
    "polya_product_m": "M",
}

# field name -> (kind, default); None default means required
_WEIGHT_FIELDS = {
    "gaussian": {"variance": ("number", 1.0)},
    "laguerre_h2": {"alpha": ("number", None)},
    "laguerre_m": {"scale": ("number", 1.0)},
    "polya_product": {"gamma": ("number", 0.0),
                      "deltas": ("numbers", ()),
                      "support": ("string", "real")},
    "polya_product_m": {"deltas": ("numbers", ()),
                        "delta_shift": ("number", 0.0)},
}


def _as_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("must be a number", path)
    return float(value)


def _as_numbers(value, path):
    if not isinstance(value, (list, tuple)):
        raise SchemaError("must be an array of numbers", path)
    return tuple(_as_number(v, "%s[%d]" % (path, i))
                 for i, v in enumerate(value))


def _weight_from_doc(doc, space, nu, n, path):
    if not isinstance(doc, dict):
        raise SchemaError("must be an object", path)
    family = doc.get("family")
    if family is None:
        raise SchemaError("missing required field", path + ".family")
    if family not in _FAMILY_SPACE:
        raise SchemaError("unknown family %r" % (family,), path + ".family")
    if _FAMILY_SPACE[family] != space:
        raise SchemaError("family %s lives on space %s"
                          % (family, _FAMILY_SPACE[family]), path + ".family")
    fields = _WEIGHT_FIELDS[family]
    for key in doc:
        if key != "family" and key not in fields:
            raise SchemaError("unknown field", "%s.%s" % (path, key))
    kwargs = {}
    for key, (kind, default) in fields.items():
        if key in doc:
            if kind == "number":
                kwargs[key] = _as_number(doc[key], "%s.%s" % (path, key))
            elif kind == "numbers":
                kwargs[key] = _as_numbers(doc[key], "%s.%s" % (path, key))
            else:
                if not isinstance(doc[key], str):
                    raise SchemaError("must be a string", "%s.%s" % (path, key))
                kwargs[key] = doc[key]
        elif default is None:
            raise SchemaError("missing required field", "%s.%s" % (path, key))
        else:
            kwargs[key] = default
    builder = getattr(weights, family)
    try:
        if space == "M":
            return builder(nu, n=n, **kwargs)
        return builder(n=n, **kwargs)
    except (DomainError, UsageError) as exc:
        where = "nu" if "nu" in str(exc) else path
        raise SchemaError(str(exc), where) from exc


def _shift_from_doc(doc, space, nu, n):
    if doc is None:
        return ensembles.no_shift()
    if not isinstance(doc, dict):
        raise SchemaError("must be an object or null", "shift")
    mode = doc.get("type")
    if mode not in ("none", "fixed", "ensemble"):
        raise SchemaError("shift type must be none, fixed, or ensemble",
                          "shift.type")
    allowed = {"none": set(), "fixed": {"x"}, "ensemble": {"second"}}[mode]
    for key in doc:
        if key != "type" and key not in allowed:
            raise SchemaError("unknown field", "shift.%s" % key)
    if mode == "none":
        return ensembles.no_shift()
    if mode == "fixed":
        if "x" not in doc:
            raise SchemaError("missing required field", "shift.x")
        return ensembles.fixed_shift(_as_numbers(doc["x"], "shift.x"))
    if "second" not in doc:
        raise SchemaError("missing required field", "shift.second")
    second = _weight_from_doc(doc["second"], space, nu, n, "shift.second")
    return ensembles.ensemble_shift(ensembles.ensemble_config(second, n))


def parse_config(source):
    """Build an EnsembleConfig from inline JSON or a JSON file path.

    Unknown fields are rejected with the offending key path in the
    message.  I/O problems reading a config file propagate as OSError.
    """
    text = source if source.lstrip().startswith("{") else None
    if text is None:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("not valid JSON (%s)" % exc) from exc
    if not isinstance(doc, dict):
        raise SchemaError("config must be a JSON object")
    for key in doc:
        if key not in ("space", "n", "nu", "weight", "shift"):
            raise SchemaError("unknown field", key)
    space = doc.get("space")
    if space not in ("H2", "M"):
        raise SchemaError('space must be "H2" or "M"', "space")
    if "n" not in doc:
        raise SchemaError("missing required field", "n")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("must be an integer >= 1", "n")
    if space == "M":
        if "nu" not in doc:
            raise SchemaError("missing required field", "nu")
        nu = _as_number(doc["nu"], "nu")
    else:
        if "nu" in doc:
            raise SchemaError("only applies to M-space configs", "nu")
        nu = 0.0
    if "weight" not in doc:
        raise SchemaError("missing required field", "weight")
    spec = _weight_from_doc(doc["weight"], space, nu, n, "weight")
    shift = _shift_from_doc(doc.get("shift"), space, nu, n)
    try:
        return ensembles.ensemble_config(spec, n, shift)
    except (DomainError, UsageError) as exc:
        raise SchemaError(str(exc)) from exc


def _weight_doc(spec):
    doc = {"family": spec.family}
    for key in _WEIGHT_FIELDS[spec.family]:
        value = getattr(spec, key)
        doc[key] = list(value) if isinstance(value, tuple) else value
    return doc


def serialize_config(cfg):
    """JSON text that parse_config maps back to an equal EnsembleConfig."""
    doc = {"space": cfg.weight.space, "n": cfg.n,
           "weight": _weight_doc(cfg.weight)}
    if cfg.weight.space == "M":
        doc["nu"] = cfg.weight.nu
    if cfg.shift.mode == "none":
        doc["shift"] = None
    elif cfg.shift.mode == "fixed":
        doc["shift"] = {"type": "fixed", "x": list(cfg.shift.x)}
    else:
        doc["shift"] = {"type": "ensemble",
                        "second": _weight_doc(cfg.shift.second.weight)}
    return json.dumps(doc, sort_keys=True)


# ---------------------------------------------------------------------------
# run configuration and small helpers


@dataclasses.dataclass
class RunConfig:
    """Parsed ensemble plus the per-command parameters."""

    ensemble: object = None
    grid: str = ""
    ygrid: str = ""
    out: str = "-"
    strategy: str = "series"
    tol: float = 1e-7
    n: int = 0
    L: int = 0
    trials: int = 100
    seed: int = 0
    count: int = 100000
    bins: int = 80
    lo: float = None
    hi: float = None
    sigma: float = 5.0
    transform_tol: float = 1e-10
    kernel_tol: float = 1e-6
    src: str = ""
    dest: str = ""


def parse_grid(text):
    """\"a:b:m\" -> m equispaced points from a to b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must look like a:b:m")
    try:
        a, b, m = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError("grid must look like a:b:m") from exc
    if m < 2 or not a < b:
        raise UsageError("grid needs a < b and m >= 2")
    return np.linspace(a, b, m)


def _write_csv(path, header, rows):
    lines = [header]
    lines.extend(",".join("%.17g" % v for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _kernel_diagonal(kev, ys):
    return np.diag(ensembles.kernel_grid(kev, ys, ys)).copy()


def _report(rc, line):
    # keep CSV on stdout clean when it goes there
    stream = sys.stderr if rc.out == "-" else sys.stdout
    print(line, file=stream)


# ---------------------------------------------------------------------------
# subcommands


def _run_density(rc):
    ys = parse_grid(rc.grid)
    kev = ensembles.kernel_evaluator(rc.ensemble, strategy=rc.strategy)
    r1 = _kernel_diagonal(kev, ys)
    _write_csv(rc.out, "y,R1", zip(ys, r1))
    return 0


def _run_kernel(rc):
    yp = parse_grid(rc.grid)
    ys = parse_grid(rc.ygrid) if rc.ygrid else yp
    kev = ensembles.kernel_evaluator(rc.ensemble, strategy=rc.strategy)
    if rc.strategy == "contour":
        kmat = ensembles.kernel_contour_grid(kev, yp, ys)
    else:
        kmat = ensembles.kernel_grid(kev, yp, ys)
    rows = ((yp[a], ys[b], kmat[a, b])
            for a in range(len(yp)) for b in range(len(ys)))
    _write_csv(rc.out, "yprime,y,K", rows)
    return 0


def _run_biorth_check(rc):
    pair = ensembles.biorth_pair(rc.ensemble)
    dev = pair.gram - np.eye(rc.ensemble.n)
    worst = float(np.max(np.abs(dev)))
    with np.printoptions(precision=3, suppress=False):
        print("Gram deviation G - I:")
        print(dev)
    print("max |G - I| = %.3e" % worst)
    if worst > rc.tol:
        print("exceeds tolerance %.3e" % rc.tol, file=sys.stderr)
        return 3
    return 0


def _run_toeplitz_check(rc):
    res = toeplitz.trial_residuals(rc.trials, rc.seed,
                                   n=rc.n or None, L=rc.L or None)
    worst = float(np.max(res))
    print("toeplitz identity: trials=%d max=%.3e mean=%.3e"
          % (len(res), worst, float(np.mean(res))))
    if worst > rc.tol:
        print("exceeds tolerance %.3e" % rc.tol, file=sys.stderr)
        return 3
    return 0


def _sample_for(cfg, count, seed):
    spec = cfg.weight
    if spec.space == "H2":
        if spec.family != "gaussian":
            raise UsageError("mc-compare samples gaussian weights on H2")
        return montecarlo.sample_h2_gaussian(cfg.n, spec.variance,
                                             shift=cfg.shift,
                                             count=count, seed=seed)
    if spec.family != "laguerre_m" or spec.scale != 1.0:
        raise UsageError("mc-compare samples laguerre_m scale=1 weights on M")
    if cfg.shift.mode != "none":
        raise UsageError("mc-compare supports M-space sampling only unshifted")
    if spec.nu == -0.5:
        return montecarlo.sample_h1_gaussian(cfg.n, parity="even",
                                             count=count, seed=seed)
    if spec.nu == 0.5:
        return montecarlo.sample_h1_gaussian(cfg.n, parity="odd",
                                             count=count, seed=seed)
    return montecarlo.sample_m_ginibre(cfg.n, int(spec.nu),
                                       count=count, seed=seed)


def _run_mc_compare(rc):
    cfg = rc.ensemble
    batch = _sample_for(cfg, rc.count, rc.seed)
    lo = rc.lo if rc.lo is not None else float(np.min(batch.spectra))
    hi = rc.hi if rc.hi is not None else float(np.max(batch.spectra))
    hist = montecarlo.empirical_density(batch, rc.bins, lo=lo, hi=hi)
    kev = ensembles.kernel_evaluator(cfg)

    # per-bin mass of R_1 by 4-node Gauss-Legendre, all bins in one call
    rule = quadrature.gauss_legendre_rule(4)
    a = hist.edges[:-1]
    width = hist.edges[1] - hist.edges[0]
    pts = (a[:, None] + 0.5 * width * (rule.nodes[None, :] + 1.0)).ravel()
    vals = _kernel_diagonal(kev, pts).reshape(rc.bins, 4)
    mass = 0.5 * width * vals @ rule.weights

    expected = rc.count * mass
    sigma_counts = np.sqrt(np.maximum(expected, 1.0))
    dev = float(np.max(np.abs(hist.counts - expected) / sigma_counts))
    scale = rc.count * width
    _write_csv(rc.out, "bin_lo,bin_hi,empirical,analytic,poisson_sigma",
               zip(hist.edges[:-1], hist.edges[1:], hist.heights,
                   mass / width, sigma_counts / scale))
    _report(rc, "mc-compare: %d bins on [%.6g, %.6g], max deviation %.2f sigma"
            % (rc.bins, lo, hi, dev))
    if dev > rc.sigma:
        _report(rc, "exceeds %.2f sigma" % rc.sigma)
        return 3
    return 0


def _transform_points(specs):
    radii = [weights.transform_model(s).holomorphy_radius for s in specs]
    finite = [r for r in radii if math.isfinite(r)]
    r = 0.4 * (min(finite) if finite else 1.0)
    ang = 2.0 * np.pi * np.arange(10) / 10.0
    return r * np.exp(1j * ang)


def _run_convolve_check(rc):
    cfg = rc.ensemble
    if cfg.shift.mode != "ensemble":
        raise UsageError("convolve-check needs a config with an ensemble shift")
    w1 = cfg.weight
    w2 = cfg.shift.second.weight
    reduced = weights.convolved_spec(w1, w2)
    if reduced is None:
        raise UsageError("no closed-form reduction for this weight pair")
    red, const = reduced

    zs = _transform_points((w1, w2, red))
    lhs = weights.eval_transform(w1, zs) * weights.eval_transform(w2, zs)
    rhs = const * weights.eval_transform(red, zs)
    t_resid = float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)))
    print("transform multiplicativity: max residual %.3e over %d points"
          % (t_resid, len(zs)))

    kev_shift = ensembles.kernel_evaluator(cfg)
    kev_red = ensembles.kernel_evaluator(ensembles.ensemble_config(red, cfg.n))
    lo, hi = weights.support_window(red)
    ys = np.linspace(lo, hi, 5)
    k_shift = ensembles.kernel_grid(kev_shift, ys, ys)
    k_red = ensembles.kernel_grid(kev_red, ys, ys)
    k_resid = float(np.max(np.abs(k_shift - k_red))
                    / max(1.0, float(np.max(np.abs(k_red)))))
    print("semigroup kernel: max residual %.3e on a 5x5 grid" % k_resid)

    ok = t_resid <= rc.transform_tol and k_resid <= rc.kernel_tol
    if not ok:
        print("exceeds tolerances (transform %.1e, kernel %.1e)"
              % (rc.transform_tol, rc.kernel_tol), file=sys.stderr)
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# SVG emission


_SVG_COLORS = ("#1f6fb4", "#c23b21", "#2c8a4b", "#6a4fa3", "#8a8a8a")
_SVG_W, _SVG_H = 640, 400
_SVG_ML, _SVG_MR, _SVG_MT, _SVG_MB = 62, 16, 16, 42


def _read_csv_table(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2:
        raise SchemaError("CSV needs a header and at least one data row")
    header = lines[0].split(",")
    if len(header) < 2:
        raise SchemaError("CSV needs at least two columns")
    rows = []
    for k, line in enumerate(lines[1:]):
        cells = line.split(",")
        if len(cells) != len(header):
            raise SchemaError("row %d has %d cells, header has %d"
                              % (k + 1, len(cells), len(header)))
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise SchemaError("row %d is not numeric" % (k + 1)) from exc
    return header, np.asarray(rows)


def _svg_series(header, table):
    """(label, xs, ys, kind) triples; kind is line or step."""
    if header[:2] == ["bin_lo", "bin_hi"] and len(header) > 2:
        lo, hi = table[:, 0], table[:, 1]
        centers = 0.5 * (lo + hi)
        edges_x = np.repeat(np.append(lo, hi[-1]), 2)[1:-1]
        out = []
        for c in range(2, len(header)):
            if header[c] == "poisson_sigma":
                continue
            if header[c] == "empirical":
                out.append((header[c], edges_x, np.repeat(table[:, c], 2),
                            "step"))
            else:
                out.append((header[c], centers, table[:, c], "line"))
        return out
    return [(header[c], table[:, 0], table[:, c], "line")
            for c in range(1, len(header))]


def _svg_ticks(lo, hi):
    return np.linspace(lo, hi, 5)


def emit_svg(csv_path, out_path):
    """Plot a CSV table (first column = abscissa) as a deterministic SVG.

    Histogram CSVs from mc-compare (bin_lo/bin_hi leading columns) render
    the empirical column as a step plot and other value columns as lines.
    """
    header, table = _read_csv_table(csv_path)
    series = _svg_series(header, table)
    xlo = min(float(np.min(xs)) for _, xs, _, _ in series)
    xhi = max(float(np.max(xs)) for _, xs, _, _ in series)
    ylo = min(float(np.min(ys)) for _, _, ys, _ in series)
    yhi = max(float(np.max(ys)) for _, _, ys, _ in series)
    if xhi == xlo:
        xlo, xhi = xlo - 0.5, xhi + 0.5
    if yhi == ylo:
        ylo, yhi = ylo - 0.5, yhi + 0.5
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad

    px_w = _SVG_W - _SVG_ML - _SVG_MR
    px_h = _SVG_H - _SVG_MT - _SVG_MB

    def to_px(xs, ys):
        x = _SVG_ML + (np.asarray(xs) - xlo) / (xhi - xlo) * px_w
        y = _SVG_MT + (yhi - np.asarray(ys)) / (yhi - ylo) * px_h
        return x, y

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
             'viewBox="0 0 %d %d">' % (_SVG_W, _SVG_H, _SVG_W, _SVG_H),
             '<rect x="%d" y="%d" width="%d" height="%d" fill="none" '
             'stroke="#000000" stroke-width="1"/>'
             % (_SVG_ML, _SVG_MT, px_w, px_h)]
    for tick in _svg_ticks(xlo, xhi):
        tx, _ = to_px(tick, 0.0)
        parts.append('<line x1="%.2f" y1="%d" x2="%.2f" y2="%d" '
                     'stroke="#000000"/>' % (tx, _SVG_MT + px_h, tx,
                                             _SVG_MT + px_h + 5))
        parts.append('<text x="%.2f" y="%d" font-family="monospace" '
                     'font-size="11" text-anchor="middle">%.4g</text>'
                     % (tx, _SVG_MT + px_h + 18, tick))
    for tick in _svg_ticks(ylo, yhi):
        _, ty = to_px(xlo, tick)
        parts.append('<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" '
                     'stroke="#000000"/>' % (_SVG_ML - 5, ty, _SVG_ML, ty))
        parts.append('<text x="%d" y="%.2f" font-family="monospace" '
                     'font-size="11" text-anchor="end">%.4g</text>'
                     % (_SVG_ML - 8, ty + 4, tick))
    for idx, (label, xs, ys, kind) in enumerate(series):
        px, py = to_px(xs, ys)
        points = " ".join("%.2f,%.2f" % (x, y) for x, y in zip(px, py))
        dash = ' stroke-dasharray="4,3"' if kind == "step" else ""
        parts.append('<polyline fill="none" stroke="%s" stroke-width="1.5"%s '
                     'points="%s"/>' % (_SVG_COLORS[idx % len(_SVG_COLORS)],
                                        dash, points))
        parts.append('<text x="%d" y="%d" font-family="monospace" '
                     'font-size="11" fill="%s">%s</text>'
                     % (_SVG_W - _SVG_MR - 120, _SVG_MT + 16 + 14 * idx,
                        _SVG_COLORS[idx % len(_SVG_COLORS)], label))
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _run_emit_svg(rc):
    return emit_svg(rc.src, rc.dest)


# ---------------------------------------------------------------------------
# dispatch


_HANDLERS = {
    "density": _run_density,
    "kernel": _run_kernel,
    "biorth-check": _run_biorth_check,
    "toeplitz-check": _run_toeplitz_check,
    "mc-compare": _run_mc_compare,
    "convolve-check": _run_convolve_check,
    "emit-svg": _run_emit_svg,
}


def run_command(cmd, rc):
    """Run one subcommand on a RunConfig; returns the exit code."""
    handler = _HANDLERS.get(cmd)
    if handler is None:
        raise UsageError("unknown command %r" % (cmd,))
    return handler(rc)


def _add_config_arg(sub):
    sub.add_argument("config", help="JSON config, inline or a file path")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="polya-kernels",
        description="Determinantal kernels and eigenvalue densities for "
                    "shifted ensembles on Hermitian and chiral matrix spaces.")
    subs = parser.add_subparsers(dest="cmd", required=True)

    p = subs.add_parser("density", help="level density R_1 on a grid")
    _add_config_arg(p)
    p.add_argument("--grid", required=True, help="a:b:m evaluation grid")
    p.add_argument("--strategy", choices=("series", "contour"),
                   default="series")
    p.add_argument("--out", default="-", help="CSV path, - for stdout")

    p = subs.add_parser("kernel", help="kernel K(y', y) on a product grid")
    _add_config_arg(p)
    p.add_argument("--grid", required=True, help="a:b:m grid for y'")
    p.add_argument("--ygrid", default="", help="a:b:m grid for y (default: --grid)")
    p.add_argument("--strategy", choices=("series", "contour"),
                   default="series")
    p.add_argument("--out", default="-", help="CSV path, - for stdout")

    p = subs.add_parser("biorth-check",
                        help="Gram matrix deviation of the bi-orthonormal pair")
    _add_config_arg(p)
    p.add_argument("--tol", type=float, default=ensembles.GRAM_TOLERANCE)

    p = subs.add_parser("toeplitz-check",
                        help="banded Toeplitz vs Hankel determinant identity")
    p.add_argument("--n", type=int, default=0, help="matrix dimension (0: random)")
    p.add_argument("--L", type=int, default=0, help="band width (0: random)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)

    p = subs.add_parser("mc-compare",
                        help="sampled spectra vs analytic level density")
    _add_config_arg(p)
    p.add_argument("--count", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--lo", type=float, default=None)
    p.add_argument("--hi", type=float, default=None)
    p.add_argument("--sigma", type=float, default=5.0,
                   help="per-bin Poisson deviation allowance")
    p.add_argument("--out", default="-", help="CSV path, - for stdout")

    p = subs.add_parser("convolve-check",
                        help="transform multiplicativity and kernel semigroup "
                             "for an ensemble-shift config")
    _add_config_arg(p)
    p.add_argument("--transform-tol", type=float, default=1e-10)
    p.add_argument("--kernel-tol", type=float, default=1e-6)

    p = subs.add_parser("emit-svg", help="plot a CSV table as SVG")
    p.add_argument("src", help="input CSV path")
    p.add_argument("dest", help="output SVG path, - for stdout")
    return parser


def _runconfig_from_args(args):
    rc = RunConfig()
    if hasattr(args, "config"):
        rc.ensemble = parse_config(args.config)
    for field in ("grid", "ygrid", "out", "strategy", "tol", "n", "L",
                  "trials", "seed", "count", "bins", "lo", "hi", "sigma",
                  "transform_tol", "kernel_tol", "src", "dest"):
        if hasattr(args, field):
            setattr(rc, field, getattr(args, field))
    return rc


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        rc = _runconfig_from_args(args)
        return run_command(args.cmd, rc)
    except (SchemaError, UsageError, DomainError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print("accuracy: %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("i/o: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
