"""Command-line front end.

Reads a trinomial instance (JSON ``{"l0": [...], "l1": [...], "l2":
[...]}`` or the compact form ``"2,3;2;3"``), runs the requested
analysis, and emits a deterministic report as JSON (default) or text.

Exit codes: 0 success; 2 parse or validation failure; 3 theorem-scope
precondition failure (e.g. divisor construction on a non-factorial
input); 4 internal inconsistency (the divisor-based dimension and the
enumeration oracle disagree - a bug, never expected).

Rationals are serialized as reduced strings ``p`` or ``p/q`` with q > 0;
the point at infinity of the base line prints as ``"inf"``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import derivations, oracle, polyhedral
from .core import (
    LinearTermError,
    NotFactorialError,
    RigidityVerdict,
    Trinomial,
    block_gcds,
    build_f,
    cylinder_verdict,
    is_factorial,
    is_homogeneous,
    is_rigid,
    linear_term_block,
    unit_positions,
)
from .derivations import NotUnitExponentError
from .grading import grading_data
from .linalg import fraction_str
from .polynomials import annihilates_modulo, is_locally_nilpotent

REPORT_GRID_CMAX = 2


class ParseError(Exception):
    """Malformed instance input; message carries position information."""


class InternalInconsistencyError(Exception):
    """The two independent graded-dimension computations disagree."""


def parse_instance(text: str) -> Trinomial:
    """Parse a JSON object or compact ``"l01,l02;l11;l21"`` instance string."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
        try:
            return Trinomial.from_json(obj)
        except (ValueError, TypeError, KeyError) as e:
            raise ParseError(f"invalid instance object: {e}") from e
    blocks = stripped.split(";")
    if len(blocks) != 3:
        raise ParseError(f"expected 3 blocks separated by ';', got {len(blocks)}")
    parsed = []
    for i, block in enumerate(blocks):
        if not block.strip():
            raise ParseError(f"block {i} is empty")
        exps = []
        for tok in block.split(","):
            tok = tok.strip()
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(f"block {i}: {tok!r} is not an integer") from None
            if value < 1:
                raise ParseError(f"block {i}: exponent {value} is not positive")
            exps.append(value)
        parsed.append(tuple(exps))
    return Trinomial(parsed[0], parsed[1], parsed[2])


# ---------------------------------------------------------------------------
# payload builders (pure; CLI wiring below)


def check_payload(t: Trinomial) -> dict:
    bad = linear_term_block(t)
    cert = is_rigid(t)
    cyl = cylinder_verdict(t)
    return {
        "instance": t.to_json(),
        "validity": "ok" if bad is None else f"HasLinearTerm({bad})",
        "gcds": list(block_gcds(t)),
        "factorial": is_factorial(t) if bad is None else None,
        "homogeneous": is_homogeneous(t),
        "rigid": cert.verdict.value,
        "rigidity": cert.to_json(),
        "cylinder": cyl.kind.value,
        "cylinder_verdict": cyl.to_json(),
        "f": build_f(t).render(t.variable_names()),
    }


def grading_payload(t: Trinomial) -> dict:
    g = grading_data(t)
    return {"instance": t.to_json(), "grading": g.to_json()}


def divisor_payload(t: Trinomial) -> dict:
    g = grading_data(t)
    d = polyhedral.build_divisor(t, g)
    return {
        "instance": t.to_json(),
        "divisor": d.to_json(),
        "vertex_integrality": polyhedral.vertex_integrality(d).to_json(),
        "properness": polyhedral.check_properness(d).to_json(),
        "horizontal_obstruction": polyhedral.horizontal_obstruction(d).to_json(),
    }


def _eval_point(t: Trinomial, g, d, m: tuple[int, ...]) -> dict:
    member = d.cone.dual_contains(m)
    oracle_dim = oracle.graded_dim_oracle(g, m)
    entry: dict = {"m": list(m), "in_weight_cone": member}
    if member:
        h = polyhedral.evaluate_divisor(d, m)
        ah = polyhedral.graded_dim_ah(d, m)
        entry["coefficients"] = {
            "0": fraction_str(h[0]),
            "1": fraction_str(h[1]),
            "inf": fraction_str(h[2]),
        }
        entry["floor_sum"] = sum(int(x.numerator // x.denominator) for x in h)
        entry["dims"] = {"ah": ah, "oracle": oracle_dim, "match": ah == oracle_dim}
    else:
        entry["coefficients"] = None
        entry["floor_sum"] = None
        entry["dims"] = {"ah": None, "oracle": oracle_dim, "match": None}
    return entry


def eval_payload(t: Trinomial, m: tuple[int, ...]) -> dict:
    g = grading_data(t)
    if len(m) != g.rank:
        raise ParseError(f"--m needs {g.rank} coordinates, got {len(m)}")
    d = polyhedral.build_divisor(t, g)
    entry = _eval_point(t, g, d, m)
    if entry["dims"]["match"] is False:
        raise InternalInconsistencyError(
            f"graded dimension mismatch at m={m}: "
            f"divisor gives {entry['dims']['ah']}, enumeration gives {entry['dims']['oracle']}"
        )
    return {"instance": t.to_json(), **entry}


def derivation_payload(t: Trinomial) -> dict:
    bad = linear_term_block(t)
    if bad is not None:
        raise LinearTermError(bad)
    units = unit_positions(t)
    if not units:
        raise NotUnitExponentError((0, 1), t.l0[0])
    position = units[0]
    d = derivations.lemma_derivation(t, position)
    f = build_f(t)
    names = t.variable_names()
    delta_f = d.apply(f)
    bound = 2 + max(t.exponents())
    nilp = is_locally_nilpotent(d, bound)
    factorial = is_factorial(t)
    shift = None
    if factorial:
        g = grading_data(t)
        e = derivations.homogeneous_degree(d, g)
        shift = list(e) if e is not None else None
    return {
        "instance": t.to_json(),
        "unit_position": list(position),
        "images": {
            names[k]: img.to_json() for k, img in enumerate(d.images) if not img.is_zero()
        },
        "images_rendered": {
            names[k]: img.render(names) for k, img in enumerate(d.images) if not img.is_zero()
        },
        "delta_f": delta_f.to_json(),
        "delta_f_is_zero": delta_f.is_zero(),
        "preserves_ideal": annihilates_modulo(d, f),
        "nilpotency": {
            "bound": bound,
            "nilpotent": nilp.nilpotent,
            "chain_lengths": list(nilp.chain_lengths) if nilp.chain_lengths else None,
        },
        "homogeneous_shift": shift,
        "factorial": factorial,
    }


def search_payload(t: Trinomial, max_degree: int, nilpotency_bound: int | None) -> dict:
    g = grading_data(t)
    candidates = oracle.bounded_lnd_search(t, g, max_degree, nilpotency_bound)
    names = t.variable_names()
    out = []
    for c in candidates:
        entry = {
            "shift": list(c.shift),
            "images": {
                names[k]: img.to_json()
                for k, img in enumerate(c.derivation.images)
                if not img.is_zero()
            },
            "nilpotent": c.nilpotency.nilpotent,
        }
        if c.nilpotency.nilpotent:
            entry["chain_lengths"] = list(c.nilpotency.chain_lengths)
        else:
            entry["failed_generator"] = names[c.nilpotency.failed_generator]
        out.append(entry)
    return {
        "instance": t.to_json(),
        "degree_bound": max_degree,
        "nilpotency_bound": nilpotency_bound or (2 + max(t.exponents())),
        "note": "basis elements of each homogeneous slice only; "
        "a consistency check, not a completeness proof",
        "candidates": out,
    }


def report_payload(t: Trinomial, jobs: int = 1) -> dict:
    payload = check_payload(t)
    bad = linear_term_block(t)
    factorial = bad is None and is_factorial(t)
    if not factorial:
        payload["grading"] = None
        payload["divisor"] = None
        payload["evaluations"] = None
        payload["cross_check"] = None
        payload["notes"] = ["grading and divisor sections need a factorial input"]
    else:
        g = grading_data(t)
        d = polyhedral.build_divisor(t, g)
        payload["grading"] = g.to_json()
        payload["divisor"] = d.to_json()
        payload["vertex_integrality"] = polyhedral.vertex_integrality(d).to_json()
        payload["properness"] = polyhedral.check_properness(d).to_json()
        payload["horizontal_obstruction"] = polyhedral.horizontal_obstruction(d).to_json()
        points = oracle.grid_points(g, oracle.GridSpec(REPORT_GRID_CMAX))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                evaluations = list(pool.map(lambda m: _eval_point(t, g, d, m), points))
        else:
            evaluations = [_eval_point(t, g, d, m) for m in points]
        payload["evaluations"] = evaluations
        mismatches = [e["m"] for e in evaluations if e["dims"]["match"] is False]
        payload["cross_check"] = {
            "grid_c_max": REPORT_GRID_CMAX,
            "points": len(points),
            "matches": sum(1 for e in evaluations if e["dims"]["match"]),
            "mismatches": mismatches,
        }
        if mismatches:
            raise InternalInconsistencyError(
                f"graded dimension mismatch at {mismatches[:3]}"
            )
    if payload["rigid"] == RigidityVerdict.NOT_RIGID.value and bad is None:
        payload["derivation"] = derivation_payload(t)
    elif unit_positions(t) and bad is None:
        payload["derivation"] = derivation_payload(t)
    else:
        payload["derivation"] = None
    return payload


# ---------------------------------------------------------------------------
# rendering


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "(empty)"
        lines = []
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if not obj:
            return pad + "(none)"
        lines = []
        for value in obj:
            if isinstance(value, (dict, list)) and value:
                lines.append(pad + "-")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(value)}")
        return "\n".join(lines)
    return pad + _scalar_text(obj)


def _scalar_text(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def _emit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    return render_text(payload) + "\n"


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--input",
        default="-",
        metavar="PATH",
        help="instance file (JSON {\"l0\":[...],...} or compact \"2,3;2;3\"); '-' reads stdin",
    )
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    parser = argparse.ArgumentParser(
        prog="trinomial",
        description="Exact verdicts and constructions for trinomial hypersurfaces. "
        "Verdicts: rigid {Rigid, NotRigid, OutOfTheoremScope}; "
        "cylinder {NoCylinder, HasCylinder, NotApplicable}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="validity, gcds and the three verdicts")
    sub.add_parser("grading", parents=[common], help="weight matrix, kernel basis, degrees")
    sub.add_parser(
        "divisor", parents=[common], help="polyhedral divisor, integrality, properness"
    )
    p_eval = sub.add_parser(
        "eval-m", parents=[common], help="evaluate the divisor and both dimension counts"
    )
    p_eval.add_argument("--m", required=True, metavar="a,b,...", help="degree vector")
    sub.add_parser(
        "derivation", parents=[common], help="the unit-exponent derivation, verified"
    )
    p_search = sub.add_parser(
        "search-lnd", parents=[common], help="bounded homogeneous derivation search"
    )
    p_search.add_argument("--max-degree", type=int, required=True, metavar="D")
    p_search.add_argument("--nilpotency-bound", type=int, default=None, metavar="N")
    p_report = sub.add_parser("report", parents=[common], help="everything, cross-checked")
    p_report.add_argument("--jobs", type=int, default=1, metavar="N")
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e


def _parse_m(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok.strip()) for tok in text.split(","))
    except ValueError:
        raise ParseError(f"--m must be comma-separated integers, got {text!r}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        t = parse_instance(_read_input(args.input))
        if args.command == "check":
            payload = check_payload(t)
        elif args.command == "grading":
            payload = grading_payload(t)
        elif args.command == "divisor":
            payload = divisor_payload(t)
        elif args.command == "eval-m":
            payload = eval_payload(t, _parse_m(args.m))
        elif args.command == "derivation":
            payload = derivation_payload(t)
        elif args.command == "search-lnd":
            payload = search_payload(t, args.max_degree, args.nilpotency_bound)
        else:
            payload = report_payload(t, jobs=args.jobs)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (LinearTermError, NotFactorialError, NotUnitExponentError) as e:
        print(f"error: out of theorem scope: {e}", file=sys.stderr)
        return 3
    except InternalInconsistencyError as e:
        print(f"error: internal inconsistency: {e}", file=sys.stderr)
        return 4
    sys.stdout.write(_emit(payload, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
