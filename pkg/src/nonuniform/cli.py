"""Command-line entry point: ``nonuniform <command> [flags]``.

Exit status is 0 on success, 1 when a validation or audit fails and 2 on
usage errors (bad flags, unsupported combinations, resource guards).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

import numpy as np

from .asym_equivalence import ErrorSpec, corrects_pair
from .bounds import asymptotic_bounds, m_alpha, m_beta
from .chain_codes import bch_chain, varshamov_chain
from .codebook import Codebook, validation_report
from .flipping import (
    flip_decode_aux, flip_decode_info, flip_decode_info_batch, flip_encode_aux,
    flip_encode_info, flipping_aux, flipping_info,
)
from .gf2m_bch import BchCode, DecodingFailure, bch_decode_batch, bch_dimension_table, build_bch
from .layered import LayeredCode, layered_decode, layered_enumerate
from .linear import hamming_7_4
from .channel_sim import sample_audit_messages, worst_case_audit
from .rates_report import DEFAULT_P_GRID, bound_rate_curves, figure_curves
from .tolerance import ChannelModel, ToleranceProfile, t_down_profile, t_f_profile
from .words import bits_str, from_hex, parse_word, to_hex, word_str

log = logging.getLogger("nonuniform")

SCHEMES = ("layered-bch", "layered-varshamov", "flipping-aux", "flipping-info", "uniform-bch")


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) in (None, "")]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _channel(args, n=None) -> ChannelModel:
    _need(args, "p_down", "q_e")
    n = n if n is not None else args.n
    if n is None:
        raise UsageError("missing required option: --n")
    try:
        return ChannelModel.from_strings(int(n), args.p_down, args.q_e, args.p_up or "0")
    except (ValueError, ArithmeticError) as e:
        raise UsageError(f"bad channel parameters: {e}") from e


def _base(spec: str | None):
    if not spec:
        raise UsageError("missing required option: --base (bch:M:T or hamming:7:4)")
    parts = spec.split(":")
    try:
        if parts[0] == "bch" and len(parts) == 3:
            return build_bch(int(parts[1]), int(parts[2]))
        if parts[0] == "hamming" and parts[1:] == ["7", "4"]:
            return hamming_7_4()
    except ValueError as e:
        raise UsageError(f"--base {spec}: {e}") from e
    raise UsageError(f"--base {spec!r}: expected bch:M:T or hamming:7:4")


def _word(text: str | None, length: int, flag: str) -> np.ndarray:
    if text is None:
        raise UsageError(f"missing required option: {flag}")
    text = text.strip()
    try:
        if len(text) == length and set(text) <= {"0", "1"}:
            v = parse_word(text)
        else:
            v = from_hex(text.lower(), length)
    except ValueError as e:
        raise UsageError(f"{flag}: {e}") from e
    return np.array([int(c) for c in word_str(v, length)], dtype=np.uint8)


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _bits_out(bits: np.ndarray) -> dict:
    v = int(bits_str(bits), 2) if len(bits) else 0
    return {"bits": bits_str(bits), "hex": to_hex(v, len(bits))}


def _profile_of(args, n=None) -> ToleranceProfile:
    if getattr(args, "profile", None):
        return ToleranceProfile.from_json(Path(args.profile).read_text())
    ch = _channel(args, n)
    return t_down_profile(ch) if ch.is_z_channel else t_f_profile(ch)


def _p_grid(args):
    if not args.p_grid:
        return DEFAULT_P_GRID
    try:
        return tuple(float(x) for x in args.p_grid.split(","))
    except ValueError as e:
        raise UsageError(f"--p-grid: {e}") from e


def _flipping(args):
    base = _base(args.base)
    ch = None
    if args.p_down and args.q_e:
        ch = _channel(args, base.n)
    if args.scheme == "flipping-info":
        return flipping_info(base, ch)
    return flipping_aux(base, ch)


def _layered(args) -> LayeredCode:
    _need(args, "n")
    n = int(args.n)
    td = _profile_of(args, n)
    depth = max(1, max(td.values))
    if args.scheme == "layered-varshamov":
        return LayeredCode(varshamov_chain(n, depth), td)
    m = (n + 1).bit_length() - 1
    if (1 << m) - 1 != n:
        raise UsageError("layered-bch needs n = 2^m - 1")
    levels = []
    for t in range(1, depth + 1):
        try:
            build_bch(m, t)
        except ValueError:
            break
        levels.append(t)
    return LayeredCode(bch_chain(m, len(levels)), td)


# -- commands --------------------------------------------------------------

def cmd_profile(args) -> int:
    ch = _channel(args)
    prof = t_down_profile(ch) if ch.is_z_channel else t_f_profile(ch)
    d = prof.to_dict()
    d["kind"] = "t_down" if ch.is_z_channel else "t_f"
    _emit(args, _json(d))
    return 0


def cmd_bounds(args) -> int:
    if args.p_grid:
        _need(args, "n", "q_e")
        curve = bound_rate_curves(int(args.n), float(args.q_e), _p_grid(args))
        _emit(args, curve.to_csv())
        return 0
    prof = _profile_of(args)
    out = {"profile": list(prof.values), "m_beta": m_beta(prof).to_dict()}
    t = prof[prof.n]
    if t >= 1 and prof.n > 2 * t:
        out["m_alpha"] = m_alpha(prof.n, t).to_dict()
    _emit(args, _json(out))
    return 0


def cmd_asymptotic(args) -> int:
    if args.p_grid:
        rows = ["p,lower_alpha,upper_alpha,lower_beta,upper_beta"]
        for p in _p_grid(args):
            b = asymptotic_bounds(p)
            rows.append(f"{p:g},{b.lower_alpha:.10f},{b.upper_alpha:.10f},{b.lower_beta:.10f},{b.upper_beta:.10f}")
        _emit(args, "\n".join(rows) + "\n")
        return 0
    _need(args, "p_down")
    try:
        b = asymptotic_bounds(float(args.p_down))
    except ValueError as e:
        raise UsageError(str(e)) from e
    _emit(args, _json(b.to_dict()))
    return 0


def cmd_construct(args) -> int:
    _need(args, "scheme")
    if args.scheme.startswith("layered"):
        code = _layered(args)
        cb = layered_enumerate(code)
        rep = validation_report(cb, code.t_down)
        out = {
            "scheme": args.scheme,
            "chain": code.chain.to_dict(),
            "t_down": list(code.t_down.values),
            "t_l": list(code.t_l.values),
            "deficient_weights": code.deficient_weights,
            "size": len(cb),
            "weight_counts": list(cb.weight_counts),
            "words": cb.hex_words(),
            "valid": not rep["violations"],
        }
        _emit(args, _json(out))
        return 0 if out["valid"] else 1
    if args.scheme.startswith("flipping"):
        f = _flipping(args)
        out = {
            "scheme": args.scheme,
            "base": str(f.base),
            "n": f.n,
            "message_length": f.message_length,
            "t_prime": f.t_prime,
            "base_t": f.base.t,
            "adequate": f.adequate,
            "max_weight": f.max_weight,
        }
        if f.alpha is not None:
            out["alpha"] = _bits_out(f.alpha)["hex"]
        if f.aux_len:
            out["aux_len"] = f.aux_len
        _emit(args, _json(out))
        return 0
    base = _base(args.base)
    _emit(args, _json({"scheme": args.scheme, "base": str(base), "n": base.n, "k": base.k, "t": base.t}))
    return 0


def cmd_encode(args) -> int:
    _need(args, "scheme")
    if args.scheme.startswith("layered"):
        raise UsageError("layered codes have no message encoder; use construct to list codewords")
    if args.scheme == "uniform-bch":
        base = _base(args.base)
        x = base.encode(_word(args.message, base.k, "--message"))
    else:
        f = _flipping(args)
        u = _word(args.message, f.message_length, "--message")
        x = flip_encode_info(f, u) if args.scheme == "flipping-info" else flip_encode_aux(f, u)
    _emit(args, _json({"codeword": _bits_out(x)}))
    return 0


def cmd_decode(args) -> int:
    _need(args, "scheme")
    try:
        if args.scheme.startswith("layered"):
            code = _layered(args)
            y = _word(args.word, code.n, "--word")
            x = layered_decode(code, int(bits_str(y), 2))
            _emit(args, _json({"codeword": _bits_out(np.array([int(c) for c in word_str(x, code.n)]))}))
            return 0
        if args.scheme == "uniform-bch":
            base = _base(args.base)
            word, _ = base.decode(_word(args.word, base.n, "--word"))
            _emit(args, _json({"message": _bits_out(word[: base.k])}))
            return 0
        f = _flipping(args)
        y = _word(args.word, f.n, "--word")
        u = flip_decode_info(f, y) if args.scheme == "flipping-info" else flip_decode_aux(f, y)
    except DecodingFailure as e:
        _emit(args, _json({"error": "decoding failure", "detail": str(e)}))
        return 1
    _emit(args, _json({"message": _bits_out(u)}))
    return 0


def cmd_simulate(args) -> int:
    _need(args, "scheme", "trials")
    base = _base(args.base)
    ch = _channel(args, base.n)
    trials, seed = int(args.trials), int(args.seed or 0)
    if args.scheme == "uniform-bch":
        encode = base.encode
        k = base.k
        if isinstance(base, BchCode):
            decoder = lambda y: (lambda o: (o[0][:, :k], o[1]))(bch_decode_batch(base, y))
        else:
            decoder = lambda y: (lambda o: (o[0][:, :k], o[1]))(base.decode_batch(y))
    elif args.scheme == "flipping-info":
        f = flipping_info(base, ch)
        encode = lambda u: flip_encode_info(f, u)
        decoder = lambda y: flip_decode_info_batch(f, y)
        k = f.message_length
    else:
        raise UsageError(f"simulate supports uniform-bch and flipping-info, not {args.scheme}")
    msgs = sample_audit_messages(encode, k, seed)
    rep = worst_case_audit(encode, decoder, ch, msgs, trials, seed=seed)
    text = rep.to_csv() if args.out and args.out.endswith(".csv") else rep.to_json() + "\n"
    _emit(args, text)
    return 0 if rep.passed else 1


def cmd_rates(args) -> int:
    _need(args, "q_e")
    curves = figure_curves(float(args.q_e), _p_grid(args))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, c in curves.items():
            (out / f"{name}.csv").write_text(c.to_csv())
    else:
        for name, c in curves.items():
            sys.stdout.write(f"# {name}\n{c.to_csv()}")
    return 0


def cmd_validate(args) -> int:
    _need(args, "codebook")
    text = Path(args.codebook).read_text().split()
    if not text:
        raise UsageError("--codebook file is empty")
    try:
        cb = Codebook.from_strings(text)
    except ValueError as e:
        raise UsageError(f"--codebook: {e}") from e
    prof = _profile_of(args, cb.n)
    if cb.n != prof.n:
        raise UsageError("profile length does not match the codebook")
    rep = validation_report(cb, prof)
    rep["valid"] = not rep["violations"]
    if args.t_up:
        t_up = ToleranceProfile.from_json(Path(args.t_up).read_text())
        rep["corrects_pair"] = corrects_pair(cb, ErrorSpec(prof, t_up))
        rep["valid"] = rep["valid"] and rep["corrects_pair"]
    _emit(args, _json(rep))
    return 0 if rep["valid"] else 1


def cmd_table2(args) -> int:
    m = int(args.m or 8)
    n = (1 << m) - 1
    rows = ["n,k,t"] + [f"{n},{k},{t}" for k, t in bch_dimension_table(m)]
    _emit(args, "\n".join(rows) + "\n")
    return 0


COMMANDS = {
    "profile": (cmd_profile, "per-weight error tolerance profile of a channel"),
    "bounds": (cmd_bounds, "upper bounds on code size for uniform and nonuniform codes"),
    "asymptotic": (cmd_asymptotic, "large-length rate bounds as functions of p"),
    "construct": (cmd_construct, "build a layered or flipping code and describe it"),
    "encode": (cmd_encode, "encode a message with a flipping or BCH code"),
    "decode": (cmd_decode, "decode a received word"),
    "simulate": (cmd_simulate, "Monte-Carlo worst-case reliability audit over a channel"),
    "rates": (cmd_rates, "rate curves of bounds and BCH-based schemes (CSV)"),
    "validate": (cmd_validate, "check pairwise ball disjointness of a codebook"),
    "table2": (cmd_table2, "dimension / correctable-error table of length-255 BCH codes"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonuniform", description="Nonuniform codes for asymmetric errors.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", help="JSON file whose keys override command-line flags")
        p.add_argument("--n", type=int)
        p.add_argument("--p-down", help="1->0 crossover probability (decimal string)")
        p.add_argument("--p-up", default="0", help="0->1 crossover probability (decimal string)")
        p.add_argument("--q-e", help="per-codeword failure budget (decimal string)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int)
        p.add_argument("--scheme", choices=SCHEMES)
        p.add_argument("--base", help="base code: bch:M:T or hamming:7:4")
        p.add_argument("--out", help="output file (or directory for rates)")
        p.add_argument("--p-grid", help="comma-separated p values")
        p.add_argument("--message", help="message as bits or hex")
        p.add_argument("--word", help="received word as bits or hex")
        p.add_argument("--codebook", help="file with one binary word per line")
        p.add_argument("--profile", help="JSON tolerance profile file (overrides the channel)")
        p.add_argument("--t-up", help="JSON nonincreasing raise profile for validate")
        p.add_argument("--m", type=int, help="field degree for table2 (default 8)")
    return parser


def _apply_config(args, parser):
    if not args.config:
        return
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"--config: {e}") from e
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if attr in ("command", "config") or not hasattr(args, attr):
            raise UsageError(f"--config: unknown field {key!r}")
        setattr(args, attr, value if value is None or isinstance(value, (int, bool)) else str(value))
    if args.scheme is not None and args.scheme not in SCHEMES:
        raise UsageError(f"--config: scheme must be one of {', '.join(SCHEMES)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if not args.verbose:
        warnings.simplefilter("ignore")
    try:
        _apply_config(args, parser)
        return COMMANDS[args.command][0](args)
    except UsageError as e:
        print(f"nonuniform {args.command}: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"nonuniform {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
