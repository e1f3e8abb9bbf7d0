"""Command-line interface: ``flavorent <command> [options]``; CSV goes to stdout or ``--out``."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import BadSpec, FlavorEntError
from .mixing import MNSP, MixingParams3
from .scan import (
    Axis,
    McSpec,
    SweepSpec,
    decoherence_table,
    monte_carlo,
    parse_number,
    sweep,
    table_neutrino,
    table_quark,
    wavepacket_table,
)
from .wavepacket import HBAR_C_GEV_M, ZERO_THRESHOLD, WavePacketParams


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except BadSpec as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _assignment(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name.strip(), _number(value)


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="PATH", help="write CSV here instead of standard output")


def _add_beam(p: argparse.ArgumentParser, delta_required: bool = True) -> None:
    g = p.add_argument_group("beam and mixing parameters")
    g.add_argument("--flavor", default="e", help="e, mu or tau (default: e)")
    g.add_argument("--delta", type=_number, required=delta_required, help="CP phase in radians, e.g. 0 or pi/2")
    g.add_argument("--E0", type=float, default=10.0, help="beam energy in GeV (default: 10)")
    g.add_argument("--sigma-p", type=float, default=1.0, help="momentum spread in GeV (default: 1)")
    g.add_argument("--xi", type=float, default=0.0, help="production constant (default: 0)")
    g.add_argument("--dm2-small", type=float, default=MNSP.dm2_small, help="solar splitting in eV^2")
    g.add_argument("--dm2-large", type=float, default=MNSP.dm2_large, help="atmospheric splitting in eV^2")
    g.add_argument("--theta12", type=_number, default=MNSP.theta[0])
    g.add_argument("--theta13", type=_number, default=MNSP.theta[1])
    g.add_argument("--theta23", type=_number, default=MNSP.theta[2])
    g.add_argument("--hbar-c", type=float, default=HBAR_C_GEV_M, help="GeV*m (default: %(default)s)")


def _beam(args) -> WavePacketParams:
    mixing = MixingParams3(args.theta12, args.theta13, args.theta23, args.delta)
    return WavePacketParams.from_splittings(
        mixing, args.dm2_small, args.dm2_large,
        E0=args.E0, sigma_p=args.sigma_p, xi=args.xi, hbar_c=args.hbar_c,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flavorent", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table-quark", help="entropies of d', s', b' at central CKM values")
    _add_out(p)

    p = sub.add_parser("table-neutrino", help="entropies of e, mu, tau over the CP phase")
    p.add_argument("--delta-grid", type=int, default=256, help="phase grid size, >= 64 (default: 256)")
    _add_out(p)

    p = sub.add_parser("sweep", help="measure on a 1D or 2D parameter grid")
    p.add_argument("--family", required=True, choices=["maximal3", "maximal4", "ckm", "mnsp"])
    p.add_argument("--flavor", default="mu")
    p.add_argument("--axis", action="append", required=True, metavar="NAME:START:STOP:COUNT",
                   help="swept parameter; give once or twice")
    p.add_argument("--set", action="append", type=_assignment, default=[], metavar="NAME=VALUE",
                   help="fixed parameter value (radians)")
    p.add_argument("--measure", choices=["entropy", "negativity"], default="entropy")
    p.add_argument("--split", type=int, default=1, help="size of the first side (default: 1)")
    _add_out(p)

    p = sub.add_parser("mc", help="Gaussian Monte Carlo over the MNSP angles")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    p.add_argument("--sigma-fraction", type=float, default=1.0 / 3.0,
                   help="sigma as a fraction of the angular uncertainty (default: 1/3)")
    p.add_argument("--delta-grid", type=int, default=64)
    p.add_argument("--flavor", default="mu")
    _add_out(p)

    p = sub.add_parser("wavepacket", help="log-negativity profile along the beam")
    _add_beam(p)
    p.add_argument("--x-min", type=float, default=1.0, help="meters (default: 1)")
    p.add_argument("--x-max", type=float, default=1e12, help="meters (default: 1e12)")
    p.add_argument("--points", type=int, default=121)
    _add_out(p)

    p = sub.add_parser("decoherence-length", help="distance where the average negativity vanishes")
    _add_beam(p)
    p.add_argument("--eps", type=float, default=ZERO_THRESHOLD)
    p.add_argument("--x-lo", type=float, default=1e3)
    p.add_argument("--x-hi", type=float, default=1e13)
    _add_out(p)
    return parser


def run(args):
    if args.command == "table-quark":
        return table_quark()
    if args.command == "table-neutrino":
        return table_neutrino(args.delta_grid)
    if args.command == "sweep":
        if len(args.axis) > 2:
            raise BadSpec("at most two --axis options")
        spec = SweepSpec(
            family=args.family, flavor=args.flavor, axes=tuple(Axis.parse(a) for a in args.axis),
            fixed=dict(args.set), measure=args.measure, split=args.split,
        )
        return sweep(spec)
    if args.command == "mc":
        spec = McSpec(samples=args.samples, seed=args.seed, sigma_fraction=args.sigma_fraction,
                      delta_grid=args.delta_grid, flavor=args.flavor)
        return monte_carlo(spec)
    if args.command == "wavepacket":
        return wavepacket_table(args.flavor, _beam(args), args.x_min, args.x_max, args.points)
    if args.command == "decoherence-length":
        return decoherence_table(args.flavor, _beam(args), args.eps, (args.x_lo, args.x_hi))
    raise BadSpec(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args).render()
    except (FlavorEntError, ValueError) as exc:
        print(f"flavorent: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
