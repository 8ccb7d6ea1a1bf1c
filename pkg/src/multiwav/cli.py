"""Command-line entry point.

Exit codes: 0 success, 2 usage error, 3 malformed or unreadable input,
4 numerical failure (undefined metric, invalid filter).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bio, data
from ._json import dumps, format_float
from .bases import CopyIndex, eval_copy, named_function
from .errors import (
    InvalidArgumentError,
    InvalidFilterError,
    InvalidSignalError,
    ParseError,
    UndefinedMetricError,
)
from .filters import named_bank
from .io import (
    atomic_write,
    read_columns_csv,
    read_pyramid,
    read_signal_csv,
    signal_csv_text,
    write_pyramid,
)
from .metrics import ECG_METHODS, METHODS, ALIASES, bench, channel_naqe, error_table, naqe, resolve_method
from .transform import MultiSignal, QuadratureSpec, decompose, level_approximation, synthesize

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3, 4

BANKS = ("haar-schauder", "haar-schauder-printed", "haar", "schauder")
FUNCTIONS = ("haar", "schauder", "haar-psi", "schauder-psi")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(text: str, out: str | None):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _quad(spec: str) -> QuadratureSpec:
    if spec == "exact":
        return QuadratureSpec()
    if spec.startswith("gauss-"):
        try:
            return QuadratureSpec("gauss", int(spec[len("gauss-"):]))
        except ValueError:
            pass
    raise InvalidArgumentError(f"quadrature must be 'exact' or 'gauss-N', got {spec!r}")


def _positive(name, value, minimum=1):
    if value < minimum:
        raise InvalidArgumentError(f"--{name} must be >= {minimum}, got {value}")


def cmd_basis(args) -> int:
    f = named_function(args.function)
    if args.points:
        header, rows = read_columns_csv(args.points)
        col = header.index("x") if "x" in header else 0
        x = rows[:, col]
    else:
        lo, hi, n = args.linspace
        x = np.linspace(float(lo), float(hi), int(n))
    y = eval_copy(f, CopyIndex(args.level, args.shift), x)
    _emit(signal_csv_text(x, y, ["value"], index="x"), args.out)
    return EXIT_OK


def cmd_filters(args) -> int:
    _emit(named_bank(args.bank).to_json(), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    sig = read_signal_csv(args.input)
    bank = named_bank(args.bank)
    pyr = decompose(sig, bank, args.levels, _quad(args.quad), args.finest_level)
    err = channel_naqe(synthesize(pyr, sig.grid), sig.samples)
    write_pyramid(args.out, pyr)
    print(f"levels {pyr.coarse_level}..{pyr.finest_level}  round-trip NAQE {format_float(err)}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    pyr = read_pyramid(args.pyramid)
    ref = read_signal_csv(args.reference) if args.reference else None
    _positive("grid", args.grid, 2)
    t = ref.grid if ref is not None else np.linspace(pyr.t0, pyr.t1, args.grid)
    values = synthesize(pyr, t)
    atomic_write(args.out, signal_csv_text(t, values))
    if ref is not None:
        print(f"NAQE {format_float(channel_naqe(values, ref.samples))}")
    return EXIT_OK


def cmd_naqe(args) -> int:
    a, b = read_signal_csv(args.a), read_signal_csv(args.b)
    print(format_float(channel_naqe(a.samples, b.samples)))
    return EXIT_OK


def _method_list(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    if not methods:
        raise InvalidArgumentError("--methods is empty")
    for m in methods:
        resolve_method(m)
    return methods


def cmd_bench(args) -> int:
    methods = _method_list(args.methods)
    _positive("reps", args.reps, 3)
    if args.input:
        sig = read_signal_csv(args.input)
    else:
        _positive("sin", args.sin, 2)
        sig = MultiSignal.from_function(np.sin, 0.0, 2 * np.pi, args.sin)
    rows = bench(sig, methods, args.reps, args.levels, _quad(args.quad), args.finest_level)
    doc = {
        "levels": args.levels,
        "repetitions": args.reps,
        "samples": sig.n,
        "results": [
            {"method": r.method, "rank": r.rank, "median_seconds": r.seconds, "naqe": r.naqe}
            for r in rows
        ],
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK


def cmd_fourier_demo(args) -> int:
    _positive("n", args.n, 2)
    _positive("j", args.j, 1)
    sig = MultiSignal.from_function(np.sin, 0.0, 2 * np.pi, args.n)
    quad = _quad(args.quad)
    rows = []
    overlay = None
    for label in ("haar", "schauder", "multiwavelet-filters"):
        bank, direct = resolve_method(label)
        a, f, _ = level_approximation(sig, bank, args.j, quad, direct=direct)
        rows.append((label, naqe(a, sig.samples), naqe(f, sig.samples)))
        overlay = (a, f)
    print(f"sin(t) on [0, 2pi], N={args.n}, J={args.j}")
    print(f"{'method':<22}{'NAQE(A_J)':>24}{'NAQE(F_J)':>24}")
    for label, ea, ef in rows:
        print(f"{label:<22}{format_float(ea):>24}{format_float(ef):>24}")
    if args.out:
        a, f = overlay
        atomic_write(args.out, signal_csv_text(sig.grid, np.vstack([sig.samples, a, f]),
                                               ["F", "A_J", "F_J"]))
    return EXIT_OK


def cmd_ecg(args) -> int:
    _positive("jmax", args.jmax, 1)
    if args.seed is not None:
        sig = data.synthetic_ecg(seed=args.seed)
    else:
        sig = read_signal_csv(args.input) if args.input else data.load_ecg()
    levels = list(range(1, args.jmax + 1))
    table = error_table(sig, ECG_METHODS, levels, _quad(args.quad))
    doc = {
        "samples": sig.n,
        "channels": sig.r,
        "levels": levels,
        "naqe": {m: {str(r.level): r.naqe for r in table if r.method == m} for m in ECG_METHODS},
    }
    if args.recon_dir:
        out = Path(args.recon_dir)
        for m in ECG_METHODS:
            bank, direct = resolve_method(m)
            for j in levels:
                _, fj, _ = level_approximation(sig, bank, j, _quad(args.quad), direct=direct)
                atomic_write(out / f"{m}_J{j}.csv", signal_csv_text(sig.grid, fj))
    _emit(dumps(doc), args.out)
    return EXIT_OK


def _read_protein(path):
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        return bio.parse_protein(text, str(path))
    return bio.parse_protein(data.strain_text(), data.STRAIN_FILE)


def cmd_protein_hydropathy(args) -> int:
    seq = _read_protein(args.input)
    prof = bio.sliding_window(bio.to_hydropathy(seq), args.window)
    lines = ["position,residue,hydropathy"]
    for pos, v in zip(prof.centers, prof.values):
        lines.append(f"{pos},{seq.residues[pos - 1]},{format_float(v)}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_protein_tmh(args) -> int:
    seq = _read_protein(args.input)
    segs = bio.predict_tmh(seq, args.window, args.level, args.threshold, args.min_len, args.merge_gap)
    doc = {
        "source": seq.source,
        "length": len(seq),
        "parameters": {
            "window": args.window,
            "level": args.level,
            "threshold": args.threshold,
            "min_len": args.min_len,
            "merge_gap": args.merge_gap,
        },
        "segments": [s.to_dict() for s in segs],
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multiwav", description="Haar-Schauder multiwavelet toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    basis = sub.add_parser("basis", help="evaluate basis functions")
    bsub = basis.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ev = bsub.add_parser("eval", help="dyadic copy 2^(j/2) f(2^j x - k) as x,value CSV")
    ev.add_argument("--function", required=True, choices=FUNCTIONS)
    ev.add_argument("--level", type=int, default=0)
    ev.add_argument("--shift", type=int, default=0)
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", help="CSV with an 'x' column (or x in the first column)")
    src.add_argument("--linspace", nargs=3, metavar=("LO", "HI", "N"))
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_basis)

    filt = sub.add_parser("filters", help="inspect filter banks")
    fsub = filt.add_subparsers(dest="action", required=True, parser_class=_Parser)
    show = fsub.add_parser("show", help="print matrix taps as JSON")
    show.add_argument("--bank", default="haar-schauder", choices=BANKS)
    show.add_argument("--out")
    show.set_defaults(func=cmd_filters)

    dec = sub.add_parser("decompose", help="signal CSV -> pyramid JSON")
    dec.add_argument("--input", required=True)
    dec.add_argument("--bank", default="haar-schauder", choices=BANKS)
    dec.add_argument("--levels", type=int, default=1)
    dec.add_argument("--finest-level", type=int)
    dec.add_argument("--quad", default="exact")
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=cmd_decompose)

    rec = sub.add_parser("reconstruct", help="pyramid JSON -> signal CSV")
    rec.add_argument("--pyramid", required=True)
    rec.add_argument("--grid", type=int, default=1024, help="uniform points on the pyramid domain")
    rec.add_argument("--reference", help="signal CSV: evaluate on its grid and report NAQE")
    rec.add_argument("--out", required=True)
    rec.set_defaults(func=cmd_reconstruct)

    nq = sub.add_parser("naqe", help="NAQE of signal A against reference B")
    nq.add_argument("--a", required=True)
    nq.add_argument("--b", required=True)
    nq.set_defaults(func=cmd_naqe)

    methods = ",".join(sorted(set(METHODS) | set(ALIASES)))
    bn = sub.add_parser("bench", help="median wall time per method")
    bsrc = bn.add_mutually_exclusive_group()
    bsrc.add_argument("--input")
    bsrc.add_argument("--sin", type=int, default=16384, help="samples of sin on [0, 2pi]")
    bn.add_argument("--methods", default="multiwavelet-filters,schauder-wavelet", help=methods)
    bn.add_argument("--reps", type=int, default=5)
    bn.add_argument("--levels", type=int, default=10)
    bn.add_argument("--finest-level", type=int)
    bn.add_argument("--quad", default="exact")
    bn.add_argument("--out")
    bn.set_defaults(func=cmd_bench)

    fd = sub.add_parser("fourier-demo", help="sin(t) approximation errors at level J")
    fd.add_argument("--n", type=int, default=50)
    fd.add_argument("--j", type=int, default=1)
    fd.add_argument("--quad", default="exact")
    fd.add_argument("--out", help="overlay CSV t,F,A_J,F_J for the multiwavelet")
    fd.set_defaults(func=cmd_fourier_demo)

    ecg = sub.add_parser("ecg", help="per-method, per-level NAQE table")
    ecg.add_argument("--input", help="signal CSV (default: bundled synthetic trace)")
    ecg.add_argument("--seed", type=int, help="regenerate the synthetic trace with this seed")
    ecg.add_argument("--jmax", type=int, default=4)
    ecg.add_argument("--quad", default="exact")
    ecg.add_argument("--recon-dir", help="write F_J CSVs per method and level here")
    ecg.add_argument("--out")
    ecg.set_defaults(func=cmd_ecg)

    prot = sub.add_parser("protein", help="hydropathy profiles and helix detection")
    psub = prot.add_subparsers(dest="action", required=True, parser_class=_Parser)
    hyd = psub.add_parser("hydropathy")
    hyd.add_argument("--in", dest="input", help="protein text (default: bundled strain)")
    hyd.add_argument("--window", type=int, default=19)
    hyd.add_argument("--out")
    hyd.set_defaults(func=cmd_protein_hydropathy)
    tmh = psub.add_parser("tmh")
    tmh.add_argument("--in", dest="input", help="protein text (default: bundled strain)")
    tmh.add_argument("--window", type=int, default=19)
    tmh.add_argument("--level", type=int, default=6)
    tmh.add_argument("--threshold", type=float, default=1.8)
    tmh.add_argument("--min-len", type=int, default=12)
    tmh.add_argument("--merge-gap", type=int, default=3)
    tmh.add_argument("--out")
    tmh.set_defaults(func=cmd_protein_tmh)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InvalidSignalError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UndefinedMetricError, InvalidFilterError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
