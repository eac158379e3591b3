"""Command-line front end.

Every subcommand prints a deterministic report (json or text, never a
timestamp) and exits 0 when all assertions pass, 1 when a verification
fails (the report carries the witness), 2 on usage or parse errors.
JSON reports embed the normalization tag, the Clifford sign, and the
per-factor polarization rule, so a saved report is interpretable on its
own.  Rationals are serialized as "p/q" strings; no floating point
appears in any payload.
"""

import argparse
import json
import os
import sys
from itertools import product as cartesian

from . import cache
from .characters import (ConeSeries, FormalCharacter, irreducibleCharacter,
                         restrictCharacter, tensorDecompose, weylDimension)
from .clifford import buildCliffordFrame
from .dirac import spectralCheckRelative, verifyKostantIdentity
from .errors import DiracforgeError, SpectralMismatch, VerificationError
from .induction import diracInduct, inductCharacter
from .liecore import (pairFromLabel, systemFromLabel, weightFromStrings,
                      weightToStrings)
from .polarized import vanishingCheck, vectorSpaceIndex
from .qr import (CoadjointModel, ToricModel, coadjointQuantization,
                 kirwanDecomposeCircle, productQRCheck, qrCheckCircle)
from .rationals import rat_from_str, rat_str
from .reps import buildLieRep

NORMALIZATION = "long-root-2"
CLIFFORD_SIGN = "minus"
POLARIZATION_RULE = ("<w,alpha> < 0: sum_{k>=0} e^{-k w}; "
                     "<w,alpha> > 0: -sum_{k>=1} e^{k w}")


# ------------------------------------------------------------- parsing

def _wstr(w):
    return ",".join(weightToStrings(w))


def _parse_weight(text):
    parts = [p.strip() for p in text.split(",")]
    try:
        return weightFromStrings(parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise DiracforgeError("bad weight %r: %s" % (text, exc))


def _parse_weight_list(text):
    return [_parse_weight(chunk) for chunk in text.split(";")
            if chunk.strip()]


def _parse_rat(text, field):
    try:
        return rat_from_str(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DiracforgeError("bad %s %r: %s" % (field, text, exc))


def _read_lines(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise DiracforgeError(str(exc))


def _write_text(path, lines):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise DiracforgeError(str(exc))


def loadCharacterFile(path):
    """Character or cone-series file; parse errors name file and line."""
    lines = [ln for ln in _read_lines(path) if ln.strip()]
    if not lines:
        raise DiracforgeError("%s: empty character file" % path)
    for no, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        ok = len(parts) == 2
        if ok:
            try:
                weightFromStrings(parts[0].split(","))
                int(parts[1])
            except (ValueError, ZeroDivisionError):
                ok = False
        if not ok:
            raise DiracforgeError(
                "%s:%d: expected '<coords> <multiplicity>', got %r"
                % (path, no, ln))
    try:
        if "cone-series" in lines[0]:
            return ConeSeries.from_lines(lines)
        return FormalCharacter.from_lines(lines)
    except (DiracforgeError, KeyError, ValueError) as exc:
        raise DiracforgeError("%s:1: bad header field: %s" % (path, exc))


def loadToricModel(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DiracforgeError(str(exc))
    except json.JSONDecodeError as exc:
        raise DiracforgeError("%s:%d: %s" % (path, exc.lineno, exc.msg))
    try:
        return ToricModel.fromDict(data, label=os.path.basename(path))
    except DiracforgeError as exc:
        raise DiracforgeError("%s: %s" % (path, exc))


class RunConfig:
    """Validated run parameters shared by every subcommand."""

    def __init__(self, args):
        self.subcommand = args.command
        self.format = args.format
        self.seed = args.seed
        self.normalization = args.normalization
        if self.normalization != NORMALIZATION:
            raise DiracforgeError(
                "normalization %r is not available; this release implements"
                " %r only" % (self.normalization, NORMALIZATION))
        self.window = getattr(args, "window", None)
        if self.window is not None:
            self.window = _parse_rat(self.window, "window")
            if self.window <= 0:
                raise DiracforgeError("window must be positive")
        if args.cache_dir:
            os.environ[cache.ENV_VAR] = args.cache_dir


# ------------------------------------------------------------ reporting

def _flat(val):
    if isinstance(val, list):
        return "[" + ", ".join(_flat(v) for v in val) + "]"
    if isinstance(val, dict):
        return "{" + ", ".join("%s=%s" % (k, _flat(v))
                               for k, v in val.items()) + "}"
    return str(val)


def _generic_text(payload):
    lines = []
    for key, val in payload.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append("%s:" % key)
            for item in val:
                lines.append("  " + "  ".join(
                    "%s=%s" % (k, _flat(v)) for k, v in item.items()))
        elif isinstance(val, dict):
            lines.append("%s:" % key)
            for k, v in val.items():
                lines.append("  %s: %s" % (k, _flat(v)))
        else:
            lines.append("%s: %s" % (key, _flat(val)))
    return lines


def _emit(config, payload, text_lines=None):
    if config.format == "json":
        doc = {"subcommand": config.subcommand,
               "normalization": NORMALIZATION,
               "cliffordSign": CLIFFORD_SIGN,
               "polarizationRule": POLARIZATION_RULE}
        if config.seed is not None:
            doc["seed"] = config.seed
        doc.update(payload)
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        if text_lines is None:
            text_lines = _generic_text(payload)
        for ln in text_lines:
            print(ln)


# ----------------------------------------------------------- subcommands

def cmd_root_system(config, args):
    rs = systemFromLabel(args.type)
    payload = {
        "label": rs.label,
        "rank": rs.rank,
        "simpleRoots": [_wstr(r) for r in rs.simpleRoots],
        "positiveRootCount": len(rs.positiveRoots),
        "positiveRoots": [_wstr(r) for r in rs.positiveRoots],
        "rho": _wstr(rs.rho),
        "weylGroupOrder": rs.weylGroupOrder(),
        "groupDimension": rs.rank + 2 * len(rs.positiveRoots),
    }
    return payload, None


def cmd_orbit(config, args):
    rs = systemFromLabel(args.type)
    lam = rs.weight(_parse_weight(args.weight))
    orbit = sorted(rs.weylOrbit(lam))
    payload = {"label": rs.label, "weight": _wstr(lam),
               "orbitSize": len(orbit),
               "orbit": [_wstr(w) for w in orbit]}
    return payload, None


def cmd_char(config, args):
    rs = systemFromLabel(args.type)
    lam = rs.weight(_parse_weight(args.weight))
    chi = irreducibleCharacter(rs, lam)
    lines = chi.to_lines()
    payload = {"label": rs.label, "weight": _wstr(lam),
               "dimension": chi.dimension(),
               "entries": {_wstr(w): chi.entries[w] for w in chi.support()}}
    if args.out:
        _write_text(args.out, lines)
        payload["out"] = args.out
    return payload, lines


def cmd_tensor(config, args):
    rs = systemFromLabel(args.type)
    lam = rs.weight(_parse_weight(args.lhs))
    mu = rs.weight(_parse_weight(args.rhs))
    dec = tensorDecompose(rs, lam, mu)
    payload = {"label": rs.label, "lhs": _wstr(lam), "rhs": _wstr(mu),
               "summands": {_wstr(w): dec[w] for w in sorted(dec)}}
    text = ["%d V(%s)" % (dec[w], _wstr(w)) for w in sorted(dec)]
    return payload, text


def cmd_restrict(config, args):
    pair = pairFromLabel(args.pair)
    lam = pair.g.weight(_parse_weight(args.weight))
    dec = restrictCharacter(pair, lam)
    chi = FormalCharacter(pair.h, dec, basis=FormalCharacter.IRREDUCIBLE)
    lines = chi.to_lines()
    payload = {"pair": pair.label, "weight": _wstr(lam),
               "entries": {_wstr(w): dec[w] for w in sorted(dec)}}
    if args.out:
        _write_text(args.out, lines)
        payload["out"] = args.out
    return payload, lines


def cmd_induct(config, args):
    pair = pairFromLabel(args.pair)
    if args.weight is not None:
        lam = pair.h.weight(_parse_weight(args.weight))
        out = diracInduct(pair, lam)
    else:
        out = inductCharacter(pair, loadCharacterFile(args.input))
    lines = out.to_lines()
    if args.out:
        _write_text(args.out, lines)
    if isinstance(out, ConeSeries):
        payload = {"pair": pair.label,
                   "entries": {_wstr(w): out.entries[w]
                               for w in out.support()},
                   "polarizer": _wstr(out.polarizer),
                   "window": "none" if out.window is None
                             else rat_str(out.window)}
        return payload, lines
    entries = {_wstr(w): m for w, m in sorted(out.entries.items())}
    payload = {"pair": pair.label, "entries": entries}
    if args.out:
        payload["out"] = args.out
    if not entries:
        return payload, ["0"]
    text = ["%+d V(%s)" % (m, w) for w, m in sorted(entries.items())]
    return payload, text


def _frame_clifford(rep):
    fr = rep.frame
    hints = tuple((i, i + 1) for i, nm in enumerate(fr.names)
                  if nm[0] == "A")
    return buildCliffordFrame(fr.gram, hints)


def _dominant_box(rs, bound):
    if bound < 0:
        raise DiracforgeError("sweep bound must be nonnegative")
    return [rs.weight(c) for c in cartesian(range(bound + 1),
                                            repeat=rs.rank)]


def cmd_verify_kostant(config, args):
    rs = systemFromLabel(args.type)
    if args.weight is not None:
        lams = [rs.weight(_parse_weight(args.weight))]
    else:
        lams = _dominant_box(rs, args.lambda_max)
    blocks = []
    scalars = {}
    constants = set()
    affine = None
    for lam in lams:
        rep = buildLieRep(rs, lam)
        one = verifyKostantIdentity(rep, _frame_clifford(rep))
        if not one["scalarMatches"]:
            raise SpectralMismatch(
                "scalar %s differs from |lambda+rho|^2 = %s at lambda ="
                " (%s)" % (rat_str(one["scalar"]),
                           rat_str(one["expected"]), _wstr(lam)))
        blocks.append({"lambda": _wstr(lam),
                       "scalar": rat_str(one["scalar"]),
                       "expected": rat_str(one["expected"]),
                       "match": True})
        scalars[_wstr(lam)] = rat_str(one["scalar"])
        constants.add(one["affineConstant"])
        affine = {"constant": one["affineConstant"],
                  "readings": one["readings"],
                  "candidates": one["candidates"],
                  "matchedCandidates": one["matchedCandidates"]}
    if len(constants) > 1:
        affine["constant"] = "varies: %s" % ", ".join(sorted(constants))
    payload = {"system": rs.label, "blocks": blocks, "scalars": scalars,
               "affine": affine, "allMatch": True}
    text = ["lambda (%s): scalar %s expected %s ok"
            % (b["lambda"], b["scalar"], b["expected"]) for b in blocks]
    text.append("affine constant: %s (pi-only reading; tensor-diagonal"
                " gives %s)" % (affine["constant"],
                                affine["readings"]["tensorDiagonal"]))
    text.append("matches: %s" % (", ".join(affine["matchedCandidates"])
                                 or "none"))
    return payload, text


def cmd_verify_relative(config, args):
    pair = pairFromLabel(args.pair)
    if args.weight is not None:
        lams = [pair.g.weight(_parse_weight(args.weight))]
    else:
        lams = _dominant_box(pair.g, args.lambda_max)
    runs = []
    text = []
    for lam in lams:
        one = spectralCheckRelative(pair, lam)
        runs.append({
            "lambda": _wstr(lam),
            "blocks": [{"mu": _wstr(b["mu"]),
                        "multiplicity": b["multiplicity"],
                        "scalar": rat_str(b["scalar"]),
                        "match": b["match"]} for b in one["blocks"]],
            "kernelCandidates": [_wstr(m)
                                 for m in one["kernelCandidates"]]})
        text.append("lambda (%s): %d blocks ok, kernel at [%s]"
                    % (_wstr(lam), len(one["blocks"]),
                       "; ".join(_wstr(m)
                                 for m in one["kernelCandidates"])))
    payload = {"pair": pair.label, "runs": runs, "allMatch": True}
    return payload, text


def cmd_polarize(config, args):
    rs = systemFromLabel(args.type)
    fiber = [rs.weight(w) for w in _parse_weight_list(args.fiber)]
    alpha = rs.weight(_parse_weight(args.alpha))
    shift = (rs.weight(_parse_weight(args.shift)) if args.shift
             else rs.zeroWeight())
    series = vectorSpaceIndex(rs, fiber, alpha, shift, config.window)
    lines = series.to_lines()
    payload = {"system": rs.label, "alpha": _wstr(alpha),
               "shift": _wstr(shift),
               "window": rat_str(config.window),
               "offset": "none" if series.offset is None
                         else rat_str(series.offset),
               "terms": len(series.entries),
               "entries": {_wstr(w): series.entries[w]
                           for w in series.support()}}
    if args.strict:
        payload["vanishing"] = vanishingCheck(series, alpha, strict=True)
    if args.out:
        _write_text(args.out, lines)
        payload["out"] = args.out
    return payload, lines


def _parse_direction(model, text):
    if model.dimension == 0:
        return ()
    if text is None:
        raise DiracforgeError("--xi is required for a positive-dimensional"
                              " model")
    return _parse_weight(text)


def cmd_qr_toric(config, args):
    model = loadToricModel(args.model)
    xi = _parse_direction(model, args.xi)
    c = _parse_rat(args.c, "level")
    report = qrCheckCircle(model, xi, c, window=config.window)
    text = ["mult0 = %d" % report["mult0"],
            "reduced = %d" % report["reduced"],
            "match: %s" % ("yes" if report["match"] else "no")]
    return report, text


def cmd_qr_coadjoint(config, args):
    rs = systemFromLabel(args.type)
    lam = rs.weight(_parse_weight(args.weight))
    out = coadjointQuantization(CoadjointModel(rs, lam))
    payload = {"system": rs.label, "orbit": _wstr(lam),
               "quantization": {_wstr(w): m
                                for w, m in sorted(out.entries.items())},
               "match": True}
    text = ["Q(O_(%s)) = V(%s)" % (_wstr(lam), _wstr(lam)), "match: yes"]
    if args.mu is not None:
        mu = rs.weight(_parse_weight(args.mu))
        payload["product"] = productQRCheck(rs, lam, mu)
        text.append("product multiplicity = %d (expected %d)"
                    % (payload["product"]["multiplicity"],
                       payload["product"]["expected"]))
    return payload, text


def cmd_decompose(config, args):
    model = loadToricModel(args.model)
    xi = _parse_direction(model, args.xi)
    c = _parse_rat(args.c, "level")
    comps = kirwanDecomposeCircle(model, xi, c, config.window)
    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        raise DiracforgeError(str(exc))
    rows = []
    for i, comp in enumerate(comps):
        fname = "component-%02d.series" % i
        _write_text(os.path.join(args.out, fname),
                    comp.localSeries.to_lines())
        rows.append({"alpha": _wstr(comp.alpha),
                     "containsZero": comp.containsZero,
                     "file": fname,
                     "terms": len(comp.localSeries.entries)})
    payload = {"model": model.label, "xi": _wstr(xi), "c": rat_str(c),
               "window": rat_str(config.window),
               "directory": args.out, "components": rows}
    _write_text(os.path.join(args.out, "report.json"),
                [json.dumps(payload, sort_keys=True, indent=2)])
    text = ["%s alpha=(%s) terms=%d -> %s"
            % ("zero " if r["containsZero"] else "      ",
               r["alpha"], r["terms"], r["file"]) for r in rows]
    return payload, text


def cmd_cache(config, args):
    if args.action == "clear":
        payload = cache.clear()
        payload.update(entriesAfter=cache.stats()["entries"])
    else:
        payload = cache.stats()
    return payload, None


# --------------------------------------------------------------- driver

def build_parser():
    parser = argparse.ArgumentParser(
        prog="diracforge",
        description="Exact-arithmetic equivariant index computations for"
                    " compact groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default="text", help="report format")
    common.add_argument("--seed", type=int, default=None,
                        help="seed recorded for randomized sweeps")
    common.add_argument("--normalization", default=NORMALIZATION)
    common.add_argument("--cache-dir", default=None,
                        help="override the character cache directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("root-system", parents=[common],
                       help="describe a root system")
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_root_system)

    p = sub.add_parser("orbit", parents=[common],
                       help="Weyl orbit of a weight")
    p.add_argument("--type", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("char", parents=[common],
                       help="irreducible character (cached)")
    p.add_argument("--type", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--out", default=None,
                   help="write the character file here")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("tensor", parents=[common],
                       help="tensor product decomposition")
    p.add_argument("--type", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("restrict", parents=[common],
                       help="restrict an irreducible to a subgroup")
    p.add_argument("--pair", required=True, help="pair label like A2:u2")
    p.add_argument("--weight", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("induct", parents=[common],
                       help="Dirac induction from a subgroup")
    p.add_argument("--pair", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weight", default=None,
                     help="single dominant H-label")
    src.add_argument("--input", default=None,
                     help="character or cone-series file over H")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_induct)

    p = sub.add_parser("verify-kostant", parents=[common],
                       help="exact square identity for the cubic operator")
    p.add_argument("--type", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weight", default=None)
    src.add_argument("--lambda-max", type=int, default=None,
                     help="sweep all dominant labels with coordinates up"
                          " to this bound")
    p.set_defaults(func=cmd_verify_kostant)

    p = sub.add_parser("verify-relative", parents=[common],
                       help="blockwise spectrum of the relative operator")
    p.add_argument("--pair", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--weight", default=None)
    src.add_argument("--lambda-max", type=int, default=None)
    p.set_defaults(func=cmd_verify_relative)

    p = sub.add_parser("polarize", parents=[common],
                       help="polarized index series of a weight list")
    p.add_argument("--type", required=True)
    p.add_argument("--fiber", required=True,
                   help="semicolon-separated weights")
    p.add_argument("--alpha", required=True)
    p.add_argument("--shift", default=None)
    p.add_argument("--window", required=True)
    p.add_argument("--strict", action="store_true",
                   help="assert strict polarization of the result")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("qr-toric", parents=[common],
                       help="circle [Q,R]=0 on a toric model")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--xi", default=None, help="circle direction")
    p.add_argument("--c", required=True, help="reduction level")
    p.add_argument("--window", default=None)
    p.set_defaults(func=cmd_qr_toric)

    p = sub.add_parser("qr-coadjoint", parents=[common],
                       help="coadjoint-orbit quantization and product"
                            " check")
    p.add_argument("--type", required=True)
    p.add_argument("--weight", required=True,
                   help="strictly dominant orbit label")
    p.add_argument("--mu", default=None,
                   help="second orbit label for the product check")
    p.set_defaults(func=cmd_qr_coadjoint)

    p = sub.add_parser("decompose", parents=[common],
                       help="Kirwan decomposition with per-component"
                            " series files")
    p.add_argument("--model", required=True)
    p.add_argument("--xi", default=None)
    p.add_argument("--c", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cache", parents=[common],
                       help="character cache statistics or clearing")
    p.add_argument("action", choices=("stats", "clear"))
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(args)
        payload, text = args.func(config, args)
    except VerificationError as exc:
        failure = {"error": type(exc).__name__, "witness": str(exc),
                   "normalization": NORMALIZATION,
                   "cliffordSign": CLIFFORD_SIGN}
        if getattr(args, "format", "text") == "json":
            print(json.dumps(failure, sort_keys=True, indent=2))
        else:
            print("FAIL %s: %s" % (type(exc).__name__, exc))
        return 1
    except DiracforgeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    _emit(config, payload, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
