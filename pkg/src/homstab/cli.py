"""Command-line front end.

Exit status: 0 success / Pass / Equal, 2 a certified obstruction
(Fail / Distinct), 1 bad input or violated precondition.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import __version__
from .abelian import BACKEND
from .complex import ComplexError, HomologyGroup, homology
from .field import (
    DEFAULT_DELTA,
    DEFAULT_EPS_Z,
    ROUNDING_TOLERANCE,
    FieldError,
    ZeroSampleError,
    single_input_image,
    winding_number,
)
from .io import (
    InputError,
    digest,
    dump_report,
    load_complex,
    load_cycle,
    load_field,
    load_lattice,
    load_samples,
)
from .scenarios import SCENARIOS, ChartError, build, run as run_scenario
from .stabilize import check_stabilizability, compare_vector_fields

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_OBSTRUCTION = 2


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    eps_z: float = DEFAULT_EPS_Z
    delta: float = DEFAULT_DELTA
    format: str = "text"

    def __post_init__(self):
        if self.eps_z <= 0 or self.delta <= 0:
            raise InputError("tolerances must be positive")
        if self.format not in ("text", "json"):
            raise InputError(f"unknown report format {self.format!r}")

    @property
    def tolerances(self) -> dict:
        return {"eps_z": self.eps_z, "delta": self.delta, "rounding": ROUNDING_TOLERANCE}


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (json is the structured report)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--eps-z", type=_positive_float, default=DEFAULT_EPS_Z,
                        help="zero-sample threshold relative to the largest sample norm")
    common.add_argument("--delta", type=_positive_float, default=DEFAULT_DELTA,
                        help="per-edge turning must stay below pi - delta")

    parser = argparse.ArgumentParser(
        prog="homstab",
        description="Homology obstructions to asymptotic stability on framed 2-complexes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("homology", parents=[common], help="integral homology of a complex")
    p.add_argument("complex")
    p.add_argument("--degree", type=int, choices=(0, 1, 2))

    p = sub.add_parser("winding", parents=[common], help="winding number of a field on a cycle")
    p.add_argument("complex")
    p.add_argument("field")
    p.add_argument("cycle", help="cycle file, or h1:<i> for the i-th H_1 generator")

    p = sub.add_parser("compare", parents=[common], help="compare two fields on H_1")
    p.add_argument("complex")
    p.add_argument("field_x")
    p.add_argument("field_y")

    p = sub.add_parser("check", parents=[common], help="test Y_* H_1 inside the control image")
    p.add_argument("complex")
    p.add_argument("field_y")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--image", help="lattice file with the image classes as columns")
    g.add_argument("--single-input", metavar="FIELD_G",
                   help="field g of the single-input system f(m, u) = u g(m)")

    p = sub.add_parser("scenario", parents=[common], help="run a built-in scenario")
    p.add_argument("name", choices=SCENARIOS)
    return parser


def _h1_text(H: HomologyGroup) -> str:
    return f"H1 = {H} ({len(H.generators)} generator(s))"


def _cmd_homology(cfg: RunConfig, args) -> tuple[dict, list[str], int]:
    K = load_complex(args.complex)
    degrees = [args.degree] if args.degree is not None else [0, 1, 2]
    groups = {k: homology(K, k) for k in degrees}
    summary = ", ".join(f"H{k} = {groups[k]}" for k in degrees)
    report = {
        "theorem": None,
        "outcome": "success",
        "witness": None,
        "coefficients": None,
        "homology": {
            f"H{k}": {
                "free-rank": H.free_rank,
                "torsion": list(H.torsion),
                "generators": [{str(i): c for i, c in g.coefficients.items()}
                               for g in H.generators],
            }
            for k, H in groups.items()
        },
        "inputs-digest": digest([args.complex]),
    }
    lines = [summary]
    for k, H in groups.items():
        for i, g in enumerate(H.generators):
            simplices = K.simplices(k)
            terms = " ".join(f"{c:+d}*{list(simplices[j])}" for j, c in g.coefficients.items())
            lines.append(f"  H{k} generator {i}: {terms}")
    return report, lines, EXIT_OK


def _cmd_winding(cfg, args):
    K = load_complex(args.complex)
    F = load_field(args.field, K, cfg.eps_z, cfg.delta)
    if args.cycle.startswith("h1:"):
        H = homology(K, 1)
        try:
            c = H.generators[int(args.cycle[3:])]
        except (ValueError, IndexError):
            raise InputError(f"cycle {args.cycle!r}: H1 has {len(H.generators)} generator(s)") from None
        paths = [args.complex, args.field]
    else:
        c = load_cycle(args.cycle, K)
        paths = [args.complex, args.field, args.cycle]
    w = winding_number(F, c)
    report = {
        "theorem": None,
        "outcome": "success",
        "witness": None,
        "coefficients": None,
        "winding": w,
        "inputs-digest": digest(paths, args.cycle if args.cycle.startswith("h1:") else ""),
    }
    return report, [f"winding = {w}"], EXIT_OK


def _verdict_lines(name, v) -> list[str]:
    d = v.to_dict()
    lines = [f"{name}: {d['outcome']}", f"  theorem: {d['theorem']}"]
    if d["witness"] is not None:
        lines.append(f"  witness: {d['witness']}")
    if d["coefficients"] is not None:
        lines.append(f"  coefficients: {d['coefficients']}")
    lines.append(f"  {d['interpretation']}")
    return lines


def _cmd_compare(cfg, args):
    K = load_complex(args.complex)
    X = load_field(args.field_x, K, cfg.eps_z, cfg.delta)
    Y = load_field(args.field_y, K, cfg.eps_z, cfg.delta)
    H = homology(K, 1)
    v = compare_vector_fields(X, Y, H)
    report = v.to_dict() | {
        "inputs-digest": digest([args.complex, args.field_x, args.field_y]),
        "h1": str(H),
    }
    lines = [_h1_text(H), f"windings X = {list(v.windings_x)}, Y = {list(v.windings_y)}"]
    lines += _verdict_lines("compare", v)
    return report, lines, EXIT_OBSTRUCTION if v.obstruction else EXIT_OK


def _cmd_check(cfg, args):
    K = load_complex(args.complex)
    Y = load_field(args.field_y, K, cfg.eps_z, cfg.delta)
    H = homology(K, 1)
    if args.image:
        image = load_lattice(args.image)
        source = args.image
    else:
        try:
            g = load_field(args.single_input, K, cfg.eps_z, cfg.delta)
        except ZeroSampleError:
            # let single_input_image explain why the product split fails
            g = load_samples(args.single_input)
        image = single_input_image(g, H)
        source = args.single_input
    v = check_stabilizability(Y, image, H)
    report = v.to_dict() | {
        "inputs-digest": digest([args.complex, args.field_y, source]),
        "h1": str(H),
    }
    lines = [_h1_text(H), f"image lattice columns: {[list(c) for c in v.lattice]}",
             f"Y classes: {[list(c) for c in v.classes]}"]
    lines += _verdict_lines("check", v)
    return report, lines, EXIT_OBSTRUCTION if v.obstruction else EXIT_OK


def _cmd_scenario(cfg, args):
    scn = build(args.name)
    res = run_scenario(scn)
    verdicts = {k: v.to_dict() for k, v in sorted(res.verdicts.items())}
    report = {
        "theorem": sorted({v["theorem"] for v in verdicts.values()}),
        "outcome": "obstruction" if res.obstruction else "no obstruction",
        "witness": {k: v["witness"] for k, v in verdicts.items() if v["witness"] is not None},
        "coefficients": {k: v["coefficients"] for k, v in verdicts.items()
                         if v["coefficients"] is not None},
        "interpretation": {k: v["interpretation"] for k, v in verdicts.items()},
        "scenario": scn.name,
        "frame": scn.frame,
        "h1": str(scn.h1),
        "windings": [{"field": f, "cycle": c, "winding": w}
                     for (f, c), w in sorted(res.windings.items())],
        "verdicts": verdicts,
        "attraction": {k: a.to_dict() for k, a in sorted(res.attraction.items())},
        "golden-mismatches": res.mismatches,
        "inputs-digest": digest(extra=f"scenario:{scn.name}"),
    }
    if scn.image is not None:
        report["image-lattice"] = [list(c) for c in scn.image.columns()]
    lines = [f"scenario {scn.name}", f"frame: {scn.frame}", _h1_text(scn.h1)]
    for (f, c), w in sorted(res.windings.items()):
        lines.append(f"winding({f}, {c}) = {w}")
    if scn.image is not None:
        lines.append(f"image lattice columns: {[list(c) for c in scn.image.columns()]}")
    for k, v in sorted(res.verdicts.items()):
        lines += _verdict_lines(k, v)
    for k, a in sorted(res.attraction.items()):
        lines.append(f"attraction({k}): {a.verdict} (advisory, horizon {a.horizon}, step {a.step})")
    for m in res.mismatches:
        lines.append(f"GOLDEN MISMATCH: {m}")
    if res.mismatches:
        code = EXIT_ERROR
    else:
        code = EXIT_OBSTRUCTION if res.obstruction else EXIT_OK
    return report, lines, code


COMMANDS = {
    "homology": _cmd_homology,
    "winding": _cmd_winding,
    "compare": _cmd_compare,
    "check": _cmd_check,
    "scenario": _cmd_scenario,
}


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = [v for k, v in vars(args).items()
              if k in ("complex", "field", "cycle", "field_x", "field_y", "image", "single_input")
              and v]
    cfg = RunConfig(args.subcommand, inputs, args.output, args.eps_z, args.delta, args.format)
    try:
        report, lines, code = COMMANDS[cfg.subcommand](cfg, args)
    except (InputError, ComplexError, FieldError, ChartError, ValueError) as exc:
        if cfg.format == "json":
            _emit(cfg, dump_report({"outcome": "error", "error": str(exc),
                                    "tolerances": cfg.tolerances}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report["tolerances"] = cfg.tolerances
    report["command"] = cfg.subcommand
    if cfg.format == "json":
        _emit(cfg, dump_report(report))
    else:
        header = (f"# homstab {cfg.subcommand} | tolerances: eps_z={cfg.eps_z:g} (relative) "
                  f"delta={cfg.delta:g} rounding={ROUNDING_TOLERANCE:g} | kernels: {BACKEND}")
        _emit(cfg, "\n".join([header, *lines]) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
