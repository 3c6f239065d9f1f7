"""Command-line front end.

Subcommands: list-codes, analyze, pattern, decode-test, simulate,
bounds, hasse.  Exit codes: 0 success, 2 usage or validation failure,
3 numerical failure (rank deficiency and kin).  Reports are plain
delimited text; ``--plot`` on the report paths additionally renders a
matplotlib figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, bounds as bounds_mod, channelsim, fastdecode, latticemetrics
from .codebook import CODE_FACTORIES, get_code, pam, write_datasheet
from .linalg import RankDeficiencyError


def _codes_table() -> str:
    header = f"{'name':<22}{'n_t':>4}{'T':>4}{'K':>4}{'rate':>6}{'kappa':>7}  {'nvd':<20}"
    lines = [header, "-" * len(header)]
    for name in CODE_FACTORIES:
        code = get_code(name)
        kappa = str(code.kappa_hint) if code.kappa_hint is not None else "-"
        lines.append(
            f"{name:<22}{code.n_t:>4}{code.T:>4}{code.K:>4}"
            f"{code.dimension_rate:>6.1f}{kappa:>7}  {code.nvd:<20}"
        )
    return "\n".join(lines)


def _cmd_list_codes(_args) -> int:
    print(_codes_table())
    return 0


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    code = get_code(args.code)
    report = latticemetrics.analyze_code(
        code, search_range=args.range, budget=args.budget, seed=args.seed,
        samples=args.samples,
    )
    _write_or_print(latticemetrics.format_report(report), args.out)
    return 0


def _cmd_datasheet(args) -> int:
    write_datasheet(get_code(args.code), args.out)
    return 0


def _format_pattern(code, mask, report, samples, seed) -> str:
    lines = [
        "# orthogonality pattern",
        f"name={code.name}",
        f"K={code.K}",
        f"samples={samples}",
        f"seed={seed}",
        f"kappa={report.kappa}",
        f"tail_size={report.tail_size}",
        "groups=" + ";".join(",".join(str(i + 1) for i in g) for g in report.head_groups),
        f"worst_case={report.worst_case}",
        "mask=",
    ]
    for row in mask:
        lines.append("".join("1" if v else "0" for v in row))
    return "\n".join(lines) + "\n"


def _cmd_pattern(args) -> int:
    code = get_code(args.code)
    mask = fastdecode.discover_pattern(code, sample_count=args.samples, seed=args.seed)
    report = fastdecode.complexity_estimate(mask)
    _write_or_print(_format_pattern(code, mask, report, args.samples, args.seed), args.out)
    if args.plot:
        _plot_mask(code, mask, report, args.plot)
    return 0


def _cmd_decode_test(args) -> int:
    code = get_code(args.code)
    alphabet = channelsim.parse_alphabet(args.alphabet)
    rng = np.random.default_rng(args.seed)
    points = np.asarray(alphabet.points)
    worst = 0.0
    mismatches = 0
    for _ in range(args.trials):
        g = points[rng.integers(0, len(points), code.K)]
        h = channelsim.sample_channel(args.nr or code.n_r_typical, code.n_t, rng)
        noise = args.noise * channelsim.sample_channel(args.nr or code.n_r_typical, code.T, rng)
        y = h @ code.encode(g) + noise
        fast = fastdecode.sphere_decode(code, y, h, points)
        oracle = fastdecode.exhaustive_ml(code, y, h, points, budget=args.budget)
        worst = max(worst, abs(fast.metric - oracle.metric))
        if not np.array_equal(fast.g, oracle.g):
            mismatches += 1
    print(f"trials={args.trials}")
    print(f"argmin_mismatches={mismatches}")
    print(f"max_metric_difference={worst!r}")
    print(f"ok={'true' if mismatches == 0 and worst < 1e-9 else 'false'}")
    return 0 if mismatches == 0 and worst < 1e-9 else 3


def _parse_sim_config(path: str, workers_override: int | None) -> channelsim.SimConfig:
    pairs = {}
    with open(path) as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    try:
        snr = tuple(float(s) for s in pairs["snr_db"].split(","))
        config = channelsim.SimConfig(
            code=pairs["code"],
            n_r=int(pairs.get("n_r", get_code(pairs["code"]).n_r_typical)),
            alphabet=pairs.get("alphabet", "pam2"),
            snr_db=snr,
            frames=int(pairs["frames"]),
            seed=int(pairs.get("seed", 0)),
            shaping=pairs.get("shaping", "linear"),
            spherical_size=int(pairs.get("spherical_size", 0)),
            workers=workers_override or int(pairs.get("workers", 1)),
        )
    except KeyError as missing:
        raise ValueError(f"simulation config is missing {missing}") from None
    return config


def _cmd_simulate(args) -> int:
    config = _parse_sim_config(args.config, args.workers)
    points = channelsim.run_bler(config)
    channelsim.export_csv(points, args.out)
    channelsim.write_metadata(args.out + ".meta", config)
    if args.plot:
        _plot_bler(config, points, args.plot)
    return 0


def _parse_center(spec: str) -> bounds_mod.CenterDescriptor:
    if spec == "Q":
        return bounds_mod.center_q()
    try:
        degree, r1, r2, p1, p2, disc = (int(v) for v in spec.split(":"))
    except ValueError:
        raise ValueError(
            "center must be 'Q' or 'degree:r1:r2:p1:p2:field_disc'"
        ) from None
    return bounds_mod.CenterDescriptor(
        degree=degree, real_places=r1, complex_pairs=r2, p1=p1, p2=p2,
        field_discriminant=disc,
    )


def _cmd_bounds(args) -> int:
    center = _parse_center(args.center)
    disc = bounds_mod.min_discriminant_bound(center, args.index, not args.general)
    z_disc = bounds_mod.z_discriminant(disc, center.field_discriminant, args.index)
    delta = bounds_mod.delta_bound(z_disc, args.index)
    print(f"center={args.center}")
    print(f"index={args.index}")
    print(f"min_discriminant={disc}")
    print(f"z_discriminant={z_disc}")
    print(f"volume={bounds_mod.volume_from_z_disc(z_disc)}")
    print(f"delta_bound={delta!r}")
    if args.index == 4 and center.degree == 1:
        print(f"orthogonal_shaping_reference={bounds_mod.ORTHOGONAL_SHAPING_DELTA_16DIM!r}")
    return 0


def _parse_hasse_file(path: str) -> bounds_mod.HasseInvariantSet:
    finite = []
    real_count = 0
    with open(path) as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "real_ramified":
                real_count = int(value)
            elif key == "finite":
                label, norm, a, m_p = value.split(",")
                finite.append(
                    bounds_mod.HasseInvariant(label.strip(), int(norm), int(a), int(m_p))
                )
            else:
                raise ValueError(f"unknown key {key!r} in invariant file")
    return bounds_mod.HasseInvariantSet(finite=tuple(finite), ramified_real_count=real_count)


def _cmd_hasse(args) -> int:
    invariants = _parse_hasse_file(args.file)
    ok = bounds_mod.admissible(invariants)
    print(f"admissible={'true' if ok else 'false'}")
    if not ok:
        return 0
    index = bounds_mod.algebra_index(invariants)
    factors, total = bounds_mod.maximal_order_discriminant(invariants, index)
    print(f"index={index}")
    print("discriminant_factorization=" + "*".join(f"{p}^{e}" for p, e in factors))
    print(f"discriminant={total}")
    return 0


def _plot_mask(code, mask, report, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(~mask, cmap="gray_r", interpolation="nearest")
    ax.set_title(f"{code.name}: persistent orthogonality, kappa={report.kappa}")
    ax.set_xlabel("basis index")
    ax.set_ylabel("basis index")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_bler(config, points, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    snr = [p.snr_db for p in points]
    bler = [max(p.bler, 1e-12) for p in points]
    err = [p.ci95 for p in points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.errorbar(snr, bler, yerr=err, marker="o", capsize=3)
    ax.set_yscale("log")
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BLER")
    ax.set_title(f"{config.code}, {config.alphabet}, {config.frames} frames/point")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stcodes",
        description="space-time lattice codes: analysis, decoding, simulation",
    )
    parser.add_argument("--version", action="version", version=f"stcodes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-codes", help="table of shipped codes").set_defaults(fn=_cmd_list_codes)

    p = sub.add_parser("analyze", help="gram, volume, minimum determinant, delta")
    p.add_argument("--code", required=True)
    p.add_argument("--range", type=int, default=2)
    p.add_argument("--budget", type=int, default=latticemetrics.EXHAUSTIVE_BUDGET)
    p.add_argument("--samples", type=int, default=latticemetrics.RANDOM_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("datasheet", help="dump a code's basis matrices")
    p.add_argument("--code", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_datasheet)

    p = sub.add_parser("pattern", help="persistent orthogonality mask and kappa")
    p.add_argument("--code", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--plot", help="also render the mask to this image file")
    p.set_defaults(fn=_cmd_pattern)

    p = sub.add_parser("decode-test", help="sphere decoder against the exhaustive oracle")
    p.add_argument("--code", required=True)
    p.add_argument("--alphabet", default="pam2")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.5)
    p.add_argument("--nr", type=int, default=0)
    p.add_argument("--budget", type=int, default=1 << 22)
    p.set_defaults(fn=_cmd_decode_test)

    p = sub.add_parser("simulate", help="Monte-Carlo BLER over an SNR grid")
    p.add_argument("--config", required=True, help="key=value configuration file")
    p.add_argument("--out", required=True, help="CSV destination")
    p.add_argument("--workers", type=int)
    p.add_argument("--plot", help="also render the BLER curve to this image file")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("bounds", help="minimum discriminant and delta bound")
    p.add_argument("--center", default="Q", help="'Q' or degree:r1:r2:p1:p2:field_disc")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--general", action="store_true",
                   help="drop the all-real-places-ramified constraint")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("hasse", help="admissibility and discriminant of local invariants")
    p.add_argument("--file", required=True, help="invariant file (key=value lines)")
    p.set_defaults(fn=_cmd_hasse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (RankDeficiencyError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
