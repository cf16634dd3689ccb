"""Command-line front end.

Every command writes one JSON document (or CSV table) with one record per
requested coefficient or checkpoint.  Exit status: 0 on success, 2 on
invalid input, 3 when an adaptive sum fails to converge (the partial
sums reached so far are still written).
"""

import argparse
import csv
import io
import json
import math
import os
import re
import sys

import numpy as np

from . import analytic, periodic, stepfn
from .engine import TruncationPolicy
from .errors import AFTError, ConvergenceError, InvalidArgumentError
from .muregular import MuRegularSpec, muregular_coeffs_recursive, muregular_function
from .numtheory import build_mobius_table, mertens_growth, mobius_via_primitive_roots, mu_over_n_partial
from .oracle import circle_coefficient, quadrature_fourier
from .counting import OpCountLedger
from .sigproc import HarmonicSignal, benchmark_vs_dft, recover_amplitude_phase

SCHEMA = "aft-kit/1"
DEFAULT_SIEVE_LIMIT = 10**7
BASE_FIELDS = ("n", "value", "K_used", "bound", "additions", "multiplications", "oracle_value", "abs_error")
COMMANDS = ("mobius", "fourier", "taylor", "ztrans", "step", "muregular",
            "davenport", "filterbank", "bench", "diagnose-pnt")


class ValidationError(Exception):
    pass


# --- argument handling ----------------------------------------------------


def _int_list(text):
    try:
        out = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--signal", help="catalog signal, e.g. catalog:cos, cosk:3, geom_disk:0.5, "
                        "trigpoly:a1=1,b2=0.5, step:1.0, harmonic:spec.json, muregular:spec.json")
    common.add_argument("--file", help="headerless CSV, one sample f(j/G) per line")
    common.add_argument("--n", type=_int_list, help="coefficient indices, comma separated")
    common.add_argument("--K", type=int, help="fixed truncation of the outer Möbius sum")
    common.add_argument("--adaptive-tol", type=float, dest="adaptive_tol")
    common.add_argument("--Kmax", type=int, help="cap for adaptive truncation")
    common.add_argument("--radius", type=float, help="sampling radius r < 1 (taylor)")
    common.add_argument("--mu-param", type=float, dest="mu_param", help="Yukawa parameter")
    common.add_argument("--theta", type=float)
    common.add_argument("--irrational", choices=sorted(periodic.IRRATIONALS))
    common.add_argument("--limit", type=int, help="sieve limit (default $AFT_SIEVE_LIMIT or 10^7)")
    common.add_argument("--query", type=_int_list, help="integers to look up (mobius)")
    common.add_argument("--checkpoints", type=_int_list, help="decade exponents j, K = 10^j (davenport)")
    common.add_argument("--output", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="aftkit", description="Arithmetic Fourier Transform toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def sieve_limit(args):
    if args.limit is not None:
        return args.limit
    env = os.environ.get("AFT_SIEVE_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"AFT_SIEVE_LIMIT must be an integer, got {env!r}")
    return DEFAULT_SIEVE_LIMIT


def policy_from(args, default_K=20):
    if args.adaptive_tol is not None:
        if args.K is not None:
            raise ValidationError("--K and --adaptive-tol are mutually exclusive")
        return TruncationPolicy.adaptive(args.adaptive_tol, args.Kmax or 256)
    return TruncationPolicy.fixed(args.K if args.K is not None else default_K)


def indices(args):
    if not args.n:
        raise ValidationError("--n is required for this command")
    if any(n < 1 for n in args.n):
        raise ValidationError("coefficient indices must be >= 1")
    return args.n


_SIGNAL_RE = re.compile(r"^(?:catalog:)?(?P<name>[a-z_0-9]+)(?:\((?P<p1>.*)\)|:(?P<p2>.*))?$")


def parse_signal(text):
    m = _SIGNAL_RE.match(text.strip())
    if not m:
        raise ValidationError(f"cannot parse signal {text!r}")
    param = m.group("p1") if m.group("p1") is not None else m.group("p2")
    return m.group("name"), param


def _floats(param, count, name):
    try:
        vals = [float(v) for v in (param or "").split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"{name} parameters must be numbers, got {param!r}")
    if len(vals) != count:
        raise ValidationError(f"{name} needs {count} parameter(s)")
    return vals


def parse_trigpoly(param):
    """``a0=c,a1=x,b2=y`` -> (cos coefficients, sin coefficients, constant)."""
    cos, sin, const = {}, {}, 0.0
    for item in (param or "").split(","):
        if not item.strip():
            continue
        m = re.fullmatch(r"\s*([ab])(\d+)\s*=\s*(\S+)\s*", item)
        if not m:
            raise ValidationError(f"bad trigpoly term {item!r}; use a<n>=value or b<n>=value")
        kind, idx, val = m.group(1), int(m.group(2)), float(m.group(3))
        if idx == 0:
            if kind == "b":
                raise ValidationError("b0 is not a coefficient")
            const = val
        else:
            (cos if kind == "a" else sin)[idx] = val
    D = max([0, *cos, *sin])
    return ([cos.get(i, 0.0) for i in range(1, D + 1)],
            [sin.get(i, 0.0) for i in range(1, D + 1)], const)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}")


def load_harmonic(path):
    spec = _read_json(path)
    try:
        return HarmonicSignal(tuple(spec["amplitudes"]), tuple(spec["phases"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"harmonic spec {path} needs 'amplitudes' and 'phases': {exc}")


def _complex(v):
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        return complex(float(v["re"]), float(v["im"]))
    return complex(v)


def load_muregular(path):
    spec = _read_json(path)
    try:
        return MuRegularSpec(float(spec["mu_param"]), tuple(_complex(c) for c in spec["coeffs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"muregular spec {path} needs 'mu_param' and 'coeffs': {exc}")


def load_samples(path):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and r[0].strip()]
        vals = [float(r[0]) for r in rows]
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot read samples from {path}: {exc}")
    return periodic.PeriodicSignal.from_samples(vals)


def periodic_signal(args):
    if args.file:
        return load_samples(args.file)
    if not args.signal:
        raise ValidationError("--signal or --file is required")
    name, param = parse_signal(args.signal)
    if name in ("cos", "sin"):
        return periodic.catalog(name)
    if name == "cosk":
        (k,) = _floats(param, 1, name)
        return periodic.catalog("cosk", int(k))
    if name == "trigpoly":
        return periodic.catalog("trigpoly", *parse_trigpoly(param))
    if name == "geom_disk":
        return periodic.catalog("geom_disk", *_floats(param, 1, name))
    if name == "harmonic":
        F = load_harmonic(param)
        return periodic.PeriodicSignal.from_harmonics(F.amplitudes, F.phases)
    raise ValidationError(f"signal {name!r} is not a period-1 catalog signal")


def analytic_signal(args):
    if not args.signal:
        raise ValidationError("--signal is required")
    name, param = parse_signal(args.signal)
    if name == "geom_disk":
        (rho,) = _floats(param, 1, name)
        return analytic.catalog("geom_disk", rho), rho
    if name in ("monomial", "cosk"):
        (d,) = _floats(param, 1, name)
        return analytic.catalog("monomial", int(d)), 0.0
    if name == "expm1":
        return analytic.catalog("expm1"), 0.0
    if name == "trigpoly":
        a, _, _ = parse_trigpoly(param)
        return analytic.BoundaryFunction.from_power_series([0.0, *a], name="trigpoly"), 0.0
    raise ValidationError(f"signal {name!r} has no analytic form")


# --- records -------------------------------------------------------------


def record(**fields):
    rec = {k: None for k in BASE_FIELDS}
    rec.update(fields)
    return rec


def _coeff_fields(res):
    return dict(n=res.n, value=res.value, K_used=res.K_used, bound=res.bound,
                additions=res.additions, multiplications=res.multiplications)


def cmd_mobius(args, table):
    queries = args.query or args.n
    records = []
    if queries:
        for q in queries:
            table.check(q)
            records.append(record(n=q, value=int(table.mu[q]), oracle_value=_rounded(q),
                                  mertens=int(table.mertens[q]), omega=int(table.omega[q])))
    for g in mertens_growth(table):
        records.append(record(n=g.x, value=g.mertens, mertens_ratio=g.ratio,
                              mu_over_n=mu_over_n_partial(table, g.x)))
    return records


def _rounded(q):
    if q > 10**5:
        return None
    return round(mobius_via_primitive_roots(q).real)


def cmd_fourier(args, table):
    f = periodic_signal(args)
    ns = indices(args)
    if not f.mean_removed:
        f = f.remove_mean()
    records = []
    if args.irrational:
        N = args.K or 10**4
        for n in ns:
            s = periodic.wintner_coeff_irrational(f, n, args.irrational, N, table)
            oracle = None
            if f.grid is None:
                a, b = quadrature_fourier(f, n)
                oracle = complex(a, -b) / 2
            records.append(record(n=n, value=complex(s.value), K_used=N, half_value=complex(s.half_value),
                                  oracle_value=oracle,
                                  abs_error=None if oracle is None else abs(s.value - oracle)))
        return records
    policy = policy_from(args)
    for n in ns:
        ca = periodic.aft_cosine(f, n, policy, table)
        cb = periodic.aft_sine(f, n, policy, table)
        rec = record(**_coeff_fields(ca), b_n=cb.value, approximate=ca.approximate or cb.approximate,
                     mean_adjustment=ca.mean_adjustment)
        rec["additions"] += cb.additions
        rec["multiplications"] += cb.multiplications
        if f.grid is None:
            a, b = quadrature_fourier(f, n)
            rec.update(oracle_value=a, oracle_b_n=b, abs_error=max(abs(ca.value - a), abs(cb.value - b)))
        records.append(rec)
    return records


def cmd_taylor(args, table):
    f, _ = analytic_signal(args)
    policy = policy_from(args)
    records = []
    for n in indices(args):
        if args.radius is not None and args.radius != 1.0:
            res = analytic.taylor_coeff_radius(f, n, args.radius, policy, table)
        else:
            res = analytic.taylor_coeff_unit(f, n, policy, table)
        oracle = circle_coefficient(f.func, n, radius=0.5) / 0.5**n
        records.append(record(**_coeff_fields(res), oracle_value=oracle, abs_error=abs(res.value - oracle),
                              mean_adjustment=res.mean_adjustment))
    return records


def cmd_ztrans(args, table):
    F, roc = analytic_signal(args)
    X = analytic.BoundaryFunction.from_callable(lambda z: F.func(1.0 / np.asarray(z, dtype=complex)),
                                                name=f"z:{F.name}", lipschitz=F.lipschitz)
    policy = policy_from(args)
    records = []
    for n in indices(args):
        res = analytic.inverse_z(X, n, policy, table, roc_radius=roc)
        oracle = circle_coefficient(X.func, -n)
        records.append(record(**_coeff_fields(res), oracle_value=oracle, abs_error=abs(res.value - oracle)))
    return records


def cmd_step(args, table):
    if not args.signal:
        raise ValidationError("--signal step:<b> is required")
    name, param = parse_signal(args.signal)
    if name != "step":
        raise ValidationError("step command needs a step:<b> signal")
    (b,) = _floats(param, 1, name)
    if args.adaptive_tol is not None:
        raise ValidationError("step coefficients use a fixed --K")
    f = stepfn.normalize_step(stepfn.EvenStepFunction.indicator(b))
    K = args.K or 1000
    records = []
    for n in indices(args):
        res = stepfn.step_cosine_coeff(f, n, K, table)
        exact = stepfn.indicator_cosine_exact(b, n)
        records.append(record(**_coeff_fields(res), oracle_value=exact, abs_error=abs(res.value - exact)))
    return records


def cmd_muregular(args, table):
    if not args.signal:
        raise ValidationError("--signal muregular:<spec.json> is required")
    name, param = parse_signal(args.signal)
    if name != "muregular":
        raise ValidationError("muregular command needs a muregular:<spec.json> signal")
    spec = load_muregular(param)
    mu = args.mu_param if args.mu_param is not None else spec.mu_param
    ns = indices(args)
    res = muregular_coeffs_recursive(muregular_function(spec), mu, max(ns), policy_from(args, 40), table)
    records = []
    for n in ns:
        truth = spec.coefficient(n)
        records.append(record(n=n, value=res.coeffs[n], K_used=res.K_used[n], bound=res.error_budget[n],
                              oracle_value=truth, abs_error=abs(res.coeffs[n] - truth),
                              bessel_weight=res.weights[n]))
    return records


def cmd_davenport(args, table):
    if args.theta is None:
        raise ValidationError("--theta is required")
    if args.checkpoints:
        Ks = [10**j for j in args.checkpoints]
    elif args.K:
        Ks = [args.K]
    else:
        raise ValidationError("--checkpoints or --K is required")
    for K in Ks:
        table.check(K)
    target = stepfn.davenport_target(args.theta)
    return [record(value=p, K_used=K, oracle_value=target, abs_error=abs(p - target))
            for K, p in stepfn.davenport_checkpoints(args.theta, Ks, table)]


def harmonic_signal(args):
    if args.signal:
        name, param = parse_signal(args.signal)
        if name != "harmonic":
            raise ValidationError("filter-bank commands need a harmonic:<spec.json> signal")
        return load_harmonic(param)
    if not args.n:
        raise ValidationError("give --signal harmonic:<spec.json> or a band size via --n")
    N = max(args.n)
    if N < 1:
        raise ValidationError("band size must be >= 1")
    return HarmonicSignal.random(N, np.random.default_rng(args.seed))


def _wrap(phi):
    return (phi + math.pi) % (2 * math.pi) - math.pi


def cmd_filterbank(args, table):
    F = harmonic_signal(args)
    ns = args.n if args.signal and args.n else range(1, F.N_band + 1)
    records = []
    for n in ns:
        if n > F.N_band:
            raise ValidationError(f"harmonic {n} is above the band N={F.N_band}")
        ledger = OpCountLedger()
        est = recover_amplitude_phase(F, n, table, ledger)
        A, ph = F.amplitudes[n - 1], F.phases[n - 1]
        err = abs(est.amplitude - A)
        if not est.degenerate:
            err = max(err, abs(_wrap(est.phase - ph)))
        records.append(record(n=n, value=est.amplitude, phase=est.phase, degenerate=est.degenerate,
                              K_used=F.N_band // n, additions=ledger.additions,
                              multiplications=ledger.multiplications, oracle_value=A,
                              oracle_phase=ph, abs_error=err))
    return records


def cmd_bench(args, table):
    F = harmonic_signal(args)
    rep = benchmark_vs_dft(F, table)
    return [record(n=F.N_band, value=rep.max_deviation, additions=rep.aft.additions,
                   multiplications=rep.aft.multiplications, abs_error=rep.aft_max_error,
                   aft_samples=rep.aft.samples_used, dft_additions=rep.dft.additions,
                   dft_multiplications=rep.dft.multiplications, dft_samples=rep.dft.samples_used,
                   dft_length=rep.dft_length, baseline=rep.baseline)]


def cmd_diagnose_pnt(args, table):
    K = args.K or 10**4
    theta = args.theta if args.theta is not None else 1.0 / (2 * K)
    rep = stepfn.pnt_chain_report(table, K, theta)
    out = [record(K_used=K, value=rep.davenport_partial, oracle_value=rep.davenport_target,
                  abs_error=rep.eps, theta=theta, small_angle_regime=rep.small_angle_regime,
                  mertens=rep.mertens, mu_over_n=rep.mu_over_n, half_mu_over_n=rep.half_mu_over_n,
                  reconstructed_bound=rep.reconstructed_bound, bound_holds=rep.bound_holds)]
    for g in mertens_growth(table, [x for x in (10**j for j in range(1, 10)) if x <= K]):
        out.append(record(n=g.x, value=g.mertens, mertens_ratio=g.ratio,
                          mu_over_n=mu_over_n_partial(table, g.x)))
    return out


HANDLERS = {
    "mobius": cmd_mobius,
    "fourier": cmd_fourier,
    "taylor": cmd_taylor,
    "ztrans": cmd_ztrans,
    "step": cmd_step,
    "muregular": cmd_muregular,
    "davenport": cmd_davenport,
    "filterbank": cmd_filterbank,
    "bench": cmd_bench,
    "diagnose-pnt": cmd_diagnose_pnt,
}


def required_limit(args):
    """Smallest sieve that the requested sums touch."""
    if args.command in ("fourier", "taylor", "ztrans", "step", "muregular") and args.n:
        K = args.K if args.K is not None else (args.Kmax or 256 if args.adaptive_tol else 1000)
        if args.command == "fourier" and args.irrational:
            return K
        return K * max(args.n)
    return 1


# --- output ----------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def render(command, records, fmt, status="ok", config=None):
    clean = [{k: _jsonable(v) for k, v in r.items()} for r in records]
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "status": status,
               "config": config or {}, "records": clean}
        return json.dumps(doc, indent=2) + "\n"
    extra = sorted({k for r in clean for k in r} - set(BASE_FIELDS))
    fields = list(BASE_FIELDS) + extra
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in clean:
        w.writerow({k: _csv_cell(r.get(k)) for k in fields})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, dict):
        return repr(complex(v["re"], v["im"]))
    return repr(v) if isinstance(v, float) else v


def parse_records(text):
    """Inverse of the JSON rendering: complex entries come back as ``complex``."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise InvalidArgumentError(f"unexpected schema {doc.get('schema')!r}")

    def back(v):
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            return complex(v["re"], v["im"])
        return v

    return [{k: back(v) for k, v in r.items()} for r in doc["records"]]


def _config(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "format") and v is not None}


def emit(args, records, status):
    text = render(args.command, records, args.format, status, _config(args))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Parse ``argv``, run one job, return the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limit = sieve_limit(args)
        need = required_limit(args)
        if need > limit:
            raise ValidationError(f"K * max(n) = {need} exceeds the sieve limit {limit}")
        table = build_mobius_table(limit)
        records = HANDLERS[args.command](args, table)
    except ConvergenceError as exc:
        print(f"aftkit: {exc}", file=sys.stderr)
        rec = record(n=exc.n, K_used=exc.K_used, status="no-convergence",
                     partials=[_jsonable(complex(p)) for p in exc.partials])
        emit(args, [rec], "no-convergence")
        return 3
    except (ValidationError, AFTError) as exc:
        print(f"aftkit: {exc}", file=sys.stderr)
        return 2
    emit(args, records, "ok")
    return 0


def main():
    sys.exit(run())
