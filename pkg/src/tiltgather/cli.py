"""Command line: gather, generate, oracle, render.

Instance files are a grid followed by an optional "---" line and
"key: value" metadata. Exit codes: 0 success, 1 negative answer,
2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

import click

from . import gathering, oracle
from .automata import automaton_from_text, tally_cycle, tally_intersection_smallest
from .dynamics import ModelVariant, apply
from .errors import BudgetExceeded, TiltError, VerificationFailed
from .geometry import Polyomino, format_pixels, parse_grid, parse_pixels, render_grid

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
PIXEL_KEYS = ("reps", "C0", "targets", "accepting", "goal", "probe")


# ---------------------------------------------------------------- instance files


@dataclass
class InstanceFile:
    polyomino: Polyomino
    C: frozenset = frozenset()
    targets: frozenset = frozenset()
    meta: dict = field(default_factory=dict)

    def pixels(self, key):
        v = self.meta.get(key)
        return [] if v is None else parse_pixels(v)

    def to_text(self) -> str:
        text = render_grid(self.polyomino, self.C, self.targets)
        if self.meta:
            text += "---\n" + "".join(f"{k}: {v}\n" for k, v in self.meta.items())
        return text

    @classmethod
    def from_text(cls, text: str) -> "InstanceFile":
        P, C, T = parse_grid(text)
        meta = {}
        lines = text.splitlines()
        if "---" in (s.strip() for s in lines):
            start = [s.strip() for s in lines].index("---") + 1
            for line in lines[start:]:
                if not line.strip():
                    continue
                if ":" not in line:
                    raise ValueError(f"bad metadata line {line!r}")
                k, v = line.split(":", 1)
                meta[k.strip()] = v.strip()
        return cls(P, C, T, meta)


def make_instance(P: Polyomino, C=(), targets=(), meta=None, pixel_meta=None) -> InstanceFile:
    """Shift everything so the grid starts at (0, 0), matching what the parser returns."""
    x0 = min(x for x, _ in P.pixels)
    y0 = min(y for _, y in P.pixels)

    def sh(ps):
        return frozenset((x - x0, y - y0) for x, y in ps)

    meta = dict(meta or {})
    for k, ps in (pixel_meta or {}).items():
        meta[k] = format_pixels(sh(ps))
    return InstanceFile(P.translate(-x0, -y0), sh(C), sh(targets), meta)


def _load(path) -> InstanceFile:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return InstanceFile.from_text(text)


def _emit(inst: InstanceFile, out):
    text = inst.to_text()
    if out in (None, "-"):
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _model(model, variant) -> ModelVariant:
    return ModelVariant(model.upper(), variant == "merge")


def _xy(s):
    a, b = s.split(",")
    return int(a), int(b)


class _Exit(Exception):
    def __init__(self, code, msg=""):
        self.code, self.msg = code, msg


def _guard(fn):
    def run(*a, **kw):
        try:
            fn(*a, **kw)
        except _Exit as e:
            if e.msg:
                click.echo(e.msg, err=e.code >= 2)
            sys.exit(e.code)
        except BudgetExceeded as e:
            click.echo(f"budget exceeded: {e}", err=True)
            sys.exit(EXIT_BUDGET)
        except VerificationFailed as e:
            click.echo(f"verification failed: {e}", err=True)
            sys.exit(EXIT_INPUT)
        except (TiltError, ValueError, OSError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@click.group()
def main():
    """Tilt-model gathering tools."""


# ---------------------------------------------------------------- gather


@main.command()
@click.argument("input")
@click.option("--model", type=click.Choice(["ft", "s1"]), default="ft")
@click.option("--variant", type=click.Choice(["merge", "block"]), default="merge")
@click.option("--at", "at", default=None, help="gather at pixel x,y")
@click.option("--budget", type=int, default=oracle.DEFAULT_BUDGET)
@_guard
def gather(input, model, variant, at, budget):
    """Print a gathering word and its target pixel."""
    inst = _load(input)
    P, C = inst.polyomino, inst.C
    if variant == "block" and (len(C) if C else P.N) > 1:
        raise _Exit(EXIT_NO, "NOT GATHERABLE")
    if C:
        res = gathering.subset_gathering_exact(P, C, budget)
    elif at is not None:
        res = gathering.gather_at_pixel(P, _xy(at), budget)
    elif model == "s1":
        res = gathering.s1_gathering(P)
    else:
        res = gathering.full_gathering(P, budget)
    if res is None:
        raise _Exit(EXIT_NO, "NOT GATHERABLE")
    click.echo(res.sequence)
    click.echo("%d,%d" % res.target)


# ---------------------------------------------------------------- generate


def _parse_tally(spec: str):
    """"rho:initial:a,b;rho:initial:c" -> tally automata."""
    out = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        rho, init, acc = part.split(":")
        out.append(tally_cycle(int(rho), [int(a) for a in acc.split(",") if a], int(init)))
    return out


DEFAULT_TALLY = "7:3:1,3,4;5:4:2,3"


def _words(s):
    return [w.strip() for w in s.split(",") if w.strip()]


@main.command()
@click.argument("kind", type=click.Choice(
    ["pm", "simulate", "tally", "scs2", "scsN", "primes", "tiltcover", "occupancy"]))
@click.option("--m", "m", type=int, default=1)
@click.option("--automaton", type=click.Path(exists=True), default=None)
@click.option("--maze", is_flag=True)
@click.option("--tally", "tally_spec", default=DEFAULT_TALLY, help="rho:initial:acc;...")
@click.option("--words", default="10,001,01,111")
@click.option("--sigma", type=int, default=None)
@click.option("--primes", default="3,5")
@click.option("-o", "--output", default=None)
@_guard
def generate(kind, m, automaton, maze, tally_spec, words, sigma, primes, output):
    """Build a reduction instance and write it as an instance file."""
    from .generators import scs, simulation, tally

    if kind == "pm":
        from .generators import lower_bound

        inst = lower_bound.gen_lower_bound(m)
        rep = inst.report
        meta = {"kind": "pm", "m": m, "classes": rep["classes"],
                "divergence": rep["divergence_letters"]}
        f = make_instance(inst.polyomino, inst.configuration(), meta=meta,
                          pixel_meta={"reps": inst.cycle, "divergence": [rep["divergence_point"]]})
    elif kind == "simulate":
        if automaton is None:
            raise _Exit(EXIT_INPUT, "simulate needs --automaton")
        A = automaton_from_text(open(automaton).read())
        inst = simulation.gen_simulation(A, maze)
        reps = [inst.reps[q] for q in sorted(inst.reps)]
        f = make_instance(inst.polyomino, meta={"kind": "simulate", "corners": inst.polyomino.n},
                          pixel_meta={"reps": reps})
    elif kind in ("tally", "primes", "tiltcover", "occupancy"):
        if kind == "primes":
            autos = tally.gen_prime_tally([int(p) for p in primes.split(",")])
        else:
            autos = _parse_tally(tally_spec)
        ell = tally_intersection_smallest(autos)
        meta = {"kind": kind, "automata": ";".join(
            f"{A.rho}:{A.initial}:{','.join(map(str, sorted(A.accepting)))}" for A in autos),
            "ell": "none" if ell is None else ell}
        if kind == "occupancy":
            P, C0, probe, goal = tally.gen_occupancy_variant(autos)
            meta["model"] = "ft-block"
            f = make_instance(P, C0, [probe], meta, {"goal": goal})
        elif kind == "tiltcover":
            inst = tally.gen_tiltcover(autos, maze)
            meta.update(cycle=inst.cycle, model="ft-block")
            f = make_instance(inst.polyomino, inst.C, inst.target, meta)
        else:
            inst = tally.gen_tally(autos, maze)
            meta["witness"] = "" if ell is None else tally.gathering_word(ell)
            f = make_instance(inst.polyomino, inst.C0, meta=meta,
                              pixel_meta={"accepting": inst.accepting_reps, "goal": inst.goal})
    else:
        ws = _words(words)
        if kind == "scs2":
            inst = scs.gen_scs_binary(ws)
        else:
            seqs = [[int(c) for c in w] for w in ws]
            if sigma is None:
                sigma = max(2, max(max(w) for w in seqs) + 1)
            inst = scs.gen_scs_general(seqs, sigma)
        f = make_instance(inst.polyomino, inst.configuration,
                          meta={"kind": kind, "words": ",".join(_words(words))})
    _emit(f, output)


# ---------------------------------------------------------------- oracle


@main.command("oracle")
@click.argument("problem", type=click.Choice(
    ["sgs", "occupancy", "reconfig", "cover", "cover-det", "census"]))
@click.argument("input")
@click.option("--model", type=click.Choice(["ft", "s1"]), default="ft")
@click.option("--variant", type=click.Choice(["merge", "block"]), default=None)
@click.option("--cycle", default=None)
@click.option("--budget", type=int, default=oracle.DEFAULT_BUDGET)
@click.option("--witness", is_flag=True)
@click.option("--check", "check", default=None, help="verify a witness word instead of searching")
@_guard
def oracle_cmd(problem, input, model, variant, cycle, budget, witness, check):
    """Answer a decision or optimisation question exactly by search."""
    inst = _load(input)
    P, C, T = inst.polyomino, inst.C, inst.targets
    if not C and problem in ("sgs", "census"):
        C = frozenset(P.pixels)
    if variant is None:
        variant = "merge" if problem == "sgs" else "block"
    m = _model(model, variant)
    if check is not None:
        end = apply(P, C, check, m)
        good = {
            "sgs": len(end) == 1,
            "occupancy": bool(end & T),
            "reconfig": end == T,
            "cover": T <= end,
            "cover-det": T <= end,
        }.get(problem)
        if good is None:
            raise _Exit(EXIT_INPUT, "--check does not apply to census")
        raise _Exit(EXIT_OK if good else EXIT_NO, "OK" if good else "FAIL")
    if problem == "sgs":
        r = oracle.sgs_exact(P, C, budget)
        if r is None:
            raise _Exit(EXIT_NO, "NONE")
        click.echo(f"{r[0]} {r[1]}" if witness else str(r[0]))
    elif problem == "occupancy":
        if len(T) != 1:
            raise _Exit(EXIT_INPUT, "occupancy needs exactly one target pixel")
        w = oracle.occupancy(P, C, next(iter(T)), m, budget, witness=True)
        if w is None:
            raise _Exit(EXIT_NO, "false")
        click.echo(f"true {w}" if witness else "true")
    elif problem in ("reconfig", "cover"):
        fn = oracle.shape_reconfiguration if problem == "reconfig" else oracle.tilt_cover
        w = fn(P, C, T, m, budget)
        if w is None:
            raise _Exit(EXIT_NO, "NONE")
        click.echo(f"{len(w)} {w}" if witness else str(len(w)))
    elif problem == "cover-det":
        cyc = cycle or inst.meta.get("cycle")
        if not cyc:
            raise _Exit(EXIT_INPUT, "cover-det needs --cycle or a cycle in the metadata")
        ell = oracle.tilt_cover_deterministic(P, C, T, cyc, m)
        if ell is None:
            raise _Exit(EXIT_NO, "NONE")
        click.echo(str(ell))
    else:
        click.echo(str(oracle.rectangle_census(P, C, budget)))


# ---------------------------------------------------------------- render


def render_svg(inst: InstanceFile, cell: int = 20) -> str:
    P = inst.polyomino
    xs = [x for x, _ in P.pixels]
    ys = [y for _, y in P.pixels]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0 + 1) * cell
    h = (y1 - min(ys) + 1) * cell
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">']
    for x, y in P.pixels:
        fill = "#f59e0b" if (x, y) in inst.targets else "#e5e7eb"
        out.append(f'<rect x="{(x - x0) * cell}" y="{(y1 - y) * cell}" width="{cell}" '
                   f'height="{cell}" fill="{fill}" stroke="#9ca3af"/>')
    r = cell * 0.35
    for x, y in sorted(inst.C):
        out.append(f'<circle cx="{(x - x0 + 0.5) * cell}" cy="{(y1 - y + 0.5) * cell}" '
                   f'r="{r}" fill="#2563eb"/>')
    for i, (x, y) in enumerate(inst.pixels("reps")):
        out.append(f'<text x="{(x - x0 + 0.2) * cell}" y="{(y1 - y + 0.8) * cell}" '
                   f'font-size="{cell // 2}">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


@main.command()
@click.argument("input")
@click.option("--format", "fmt", type=click.Choice(["ascii", "svg"]), default="ascii")
@_guard
def render(input, fmt):
    """Draw an instance as ascii (the grid format) or svg."""
    inst = _load(input)
    if fmt == "ascii":
        click.echo(render_grid(inst.polyomino, inst.C, inst.targets), nl=False)
    else:
        click.echo(render_svg(inst), nl=False)


if __name__ == "__main__":
    main()
