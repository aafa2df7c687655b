"""Command-line driver.

Every subcommand reads a level function from a phi-file, runs one computation
and writes a JSON or CSV table.  Exit status: 0 success, 1 a verification
failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .arith import CycRat, NotPIntegralError, PadicCyc, ParameterError, PrecisionError, is_prime
from .eisenstein import eis_classical
from .level import GL2ModN, LevelFunction, katz_function, p1, p2, symplectic_hat, transpose
from .lfunc import HorosphericalMismatch, horospherical, l_series_function, l_value_neg
from .measure import EisensteinMeasure, divisible_by_p
from .padic_eis import PadicEisSpec, check_one_minus_phistar, check_theta_shift, eis_p
from .qexp import QExpansion
from .symh import SymSection, alpha_eis, eis_dr_oneform, horizontal_kernel_probe, verify_syntomic_pair

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

# commands that work over Z[zeta_N]/p^M and so need p
PADIC_COMMANDS = {"eis-p", "measure-moments", "measure-integrality", "measure-support",
                  "alpha", "verify-main-theorem", "verify-suite"}
TRANSFORMS = {"p1": p1, "p2": p2, "hat": symplectic_hat, "transpose": transpose}


class ConfigError(Exception):
    pass


# phi-files

def parse_phi_text(text: str, N: int) -> LevelFunction:
    """Lines "a b num/den"; '#' starts a comment; missing pairs are 0."""
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ConfigError(f"phi-file line {lineno}: expected 'a b value', got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
            v = Fraction(parts[2])
        except ValueError as exc:
            raise ConfigError(f"phi-file line {lineno}: {exc}") from None
        if not (0 <= a < N and 0 <= b < N):
            raise ConfigError(f"phi-file line {lineno}: index ({a}, {b}) outside 0..{N - 1}")
        if (a, b) in table:
            raise ConfigError(f"phi-file line {lineno}: duplicate entry for ({a}, {b})")
        table[(a, b)] = v
    return LevelFunction.from_dict(N, table)


def read_phi_file(path: str, N: int) -> LevelFunction:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read phi-file {path}: {exc.strerror}") from None
    return parse_phi_text(text, N)


def format_phi_table(phi: LevelFunction) -> str:
    """Inverse of ``parse_phi_text`` for rational-valued functions; zeros are omitted."""
    lines = [f"# level {phi.N}"]
    for (a, b), v in phi.items():
        v = _as_rational(v)
        if v is None:
            raise ConfigError("only rational-valued functions can be written as phi-files")
        if v:
            lines.append(f"{a} {b} {v}")
    return "\n".join(lines) + "\n"


def _as_rational(v):
    if isinstance(v, CycRat):
        return v.rational() if v.is_rational() else None
    if isinstance(v, PadicCyc):
        return None
    return Fraction(v)


# exact serialization

def encode(c) -> list[str]:
    """One ring element as a list of exact strings (power-basis coordinates)."""
    if isinstance(c, (CycRat, PadicCyc)):
        return [str(x) for x in c.coeffs]
    return [str(Fraction(c))]


def encode_series(s) -> list[list[str]]:
    return [encode(c) for c in s]


# configuration

@dataclass(frozen=True)
class JobConfig:
    command: str
    N: int
    phi_path: str
    p: int | None = None
    k: int = 1
    r: int | None = None
    q_prec: int = 20
    p_prec: int = 6
    g: str | None = None
    fmt: str = "json"
    out: str | None = None
    transform: str = "p1"

    def validate(self) -> GL2ModN:
        if self.N < 3:
            raise ConfigError(f"level must be >= 3, got {self.N}")
        if self.q_prec < 1 or self.p_prec < 1:
            raise ConfigError("q-prec and p-prec must be >= 1")
        if self.k < 0:
            raise ConfigError("weight must be >= 0")
        if self.fmt == "phi" and self.command != "fourier":
            raise ConfigError("--format phi is only available for fourier")
        if self.command in PADIC_COMMANDS:
            p = self.p
            if p is None:
                raise ConfigError(f"{self.command} needs --p")
            if p == 2 or not is_prime(p):
                raise ConfigError(f"p must be an odd prime, got {p}")
            if self.N % p == 0:
                raise ConfigError(f"p={p} divides N={self.N}")
            if p <= self.k + 2:
                raise ConfigError(f"need p > k + 2, got p={p}, k={self.k}")
            if self.k < 1:
                raise ConfigError("weight must be >= 1")
        try:
            return GL2ModN.parse(self.g, self.N) if self.g else GL2ModN.identity(self.N)
        except ParameterError as exc:
            raise ConfigError(str(exc)) from None

    def meta(self) -> dict:
        return {"p": self.p, "N": self.N, "k": self.k, "r": self.r, "q_prec": self.q_prec,
                "p_prec": self.p_prec, "g": self.g or str(GL2ModN.identity(self.N))}


@dataclass
class Result:
    body: dict
    rows: list[list]
    header: list[str]
    ok: bool = True


def _series_result(series, extra=None) -> Result:
    coeffs = encode_series(series)
    body = {"coeffs": coeffs}
    body.update(extra or {})
    return Result(body, [[n] + c for n, c in enumerate(coeffs)], ["n", "coeff"])


def _report_rows(checks: dict) -> list[list]:
    return [[name, "PASS" if ok else "FAIL"] for name, ok in checks.items()]


# commands

def cmd_fourier(cfg, phi, g):
    out = TRANSFORMS[cfg.transform](phi)
    if cfg.fmt == "phi":
        return format_phi_table(out)
    coeffs = [encode(v) for _, v in out.items()]
    rows = [[a, b] + encode(v) for (a, b), v in out.items()]
    return Result({"transform": cfg.transform, "coeffs": coeffs}, rows, ["a", "b", "value"])


def cmd_lvalue(cfg, phi, g):
    """L(phi, -k) with L read along m -> phi(0, m)."""
    v = l_value_neg(l_series_function(phi), cfg.k)
    return Result({"value": encode(v)}, [[cfg.k] + encode(v)], ["k", "value"])


def cmd_horospherical(cfg, phi, g):
    try:
        v = horospherical(phi, cfg.k, g)
    except HorosphericalMismatch as exc:
        return Result({"error": str(exc)}, [["mismatch"]], ["status"], ok=False)
    return Result({"value": str(v)}, [[cfg.k, str(v)]], ["k", "value"])


def cmd_eis(cfg, phi, g):
    if cfg.k < 1:
        raise ConfigError("eis needs weight >= 1")
    return _series_result(eis_classical(cfg.k, phi, g, cfg.q_prec))


def cmd_eis_p(cfg, phi, g):
    r = cfg.r or 0
    return _series_result(eis_p(PadicEisSpec(cfg.k, r, phi, g, cfg.p, cfg.q_prec, cfg.p_prec)))


def _measure(cfg):
    return EisensteinMeasure(cfg.p, cfg.N, cfg.k, cfg.q_prec, cfg.p_prec)


def cmd_measure_moments(cfg, phi, g):
    r_max = cfg.r or 0
    if r_max < 0:
        raise ConfigError("--moment must be >= 0 for measure moments")
    m, F = _measure(cfg), katz_function(phi, g)
    moments, rows = [], []
    for r in range(r_max + 1):
        coeffs = encode_series(m.moment(r, F))
        moments.append({"r": r, "coeffs": coeffs})
        rows.extend([r, n] + c for n, c in enumerate(coeffs))
    return Result({"moments": moments}, rows, ["r", "n", "coeff"])


def cmd_measure_integrality(cfg, phi, g):
    r_max = cfg.r if cfg.r is not None else 8
    records = _measure(cfg).integrality_check(r_max, katz_function(phi, g))
    body = {"records": [{"r": x.r, "passed": x.passed, "min_valuation": x.min_valuation,
                         "first_failing_q_power": x.first_failing_q_power} for x in records]}
    rows = [[x.r, "PASS" if x.passed else "FAIL", x.min_valuation, x.first_failing_q_power]
            for x in records]
    return Result(body, rows, ["r", "status", "min_valuation", "first_failing_q_power"],
                  ok=all(x.passed for x in records))


def cmd_measure_support(cfg, phi, g):
    series = _measure(cfg).integrate(divisible_by_p(cfg.p), katz_function(phi, g))
    res = _series_result(series, {"vanishes": not series})
    res.ok = not series
    return res


def cmd_alpha(cfg, phi, g):
    alpha = alpha_eis(cfg.k, phi, g, cfg.p, cfg.q_prec, cfg.p_prec)
    slots = [encode_series(c) for c in alpha.coeffs]
    rows = [[s, n] + c for s, coeffs in enumerate(slots) for n, c in enumerate(coeffs)]
    return Result({"slots": slots}, rows, ["slot", "n", "coeff"])


def _main_theorem(cfg, phi, g):
    alpha = alpha_eis(cfg.k, phi, g, cfg.p, cfg.q_prec, cfg.p_prec)
    return verify_syntomic_pair(alpha, eis_dr_oneform(cfg.k, phi, g, cfg.q_prec), cfg.p)


def cmd_verify_main_theorem(cfg, phi, g):
    rep = _main_theorem(cfg, phi, g)
    residuals = [{"slot": x.slot, "q_power": x.q_power, "valuation": x.valuation}
                 for x in rep.residuals]
    rows = [[x.slot, x.q_power, x.valuation] for x in rep.residuals] or [["none", "", ""]]
    return Result({"passed": rep.passed, "residuals": residuals}, rows,
                  ["slot", "q_power", "valuation"], ok=rep.passed)


def cmd_verify_suite(cfg, phi, g):
    p, k, Q, M = cfg.p, cfg.k, cfg.q_prec, cfg.p_prec
    m, F = _measure(cfg), katz_function(phi, g)
    r = cfg.r or 0
    checks = {
        "constant-terms": all(not m.moment(j, F)[0] for j in range(4)),
        "integrality": all(x.passed for x in m.integrality_check(min(4, M - 1), F)),
        "support-on-units": not m.integrate(divisible_by_p(p), F),
        "one-minus-phistar": check_one_minus_phistar(k, phi, g, p, Q, M).passed,
        "main-theorem": _main_theorem(cfg, phi, g).passed,
    }
    if p > k + 3:
        checks["theta-shift"] = check_theta_shift(PadicEisSpec(k, r, phi, g, p, Q, M)).passed
    # the constant section c_k = 1 must be horizontal with the expected shape
    const = QExpansion.monomial(PadicCyc.one(cfg.N, p, M), 0, Q)
    section = SymSection(k, (const * 0,) * k + (const,))
    checks["horizontal-kernel"] = horizontal_kernel_probe(k, section).passed
    return Result({"checks": checks}, _report_rows(checks), ["check", "status"], ok=all(checks.values()))


COMMANDS = {
    "fourier": cmd_fourier,
    "lvalue": cmd_lvalue,
    "horospherical": cmd_horospherical,
    "eis": cmd_eis,
    "eis-p": cmd_eis_p,
    "measure-moments": cmd_measure_moments,
    "measure-integrality": cmd_measure_integrality,
    "measure-support": cmd_measure_support,
    "alpha": cmd_alpha,
    "verify-main-theorem": cmd_verify_main_theorem,
    "verify-suite": cmd_verify_suite,
}


def render(cfg: JobConfig, res) -> str:
    if isinstance(res, str):
        return res
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = list(res.header)
        width = max((len(row) for row in res.rows), default=len(header))
        if width > len(header):
            # one column per power-basis coordinate of the last field
            stem = header.pop()
            header += [f"{stem}_{j}" for j in range(width - len(header))]
        w.writerow(header)
        w.writerows(res.rows)
        return buf.getvalue()
    body = {"meta": cfg.meta(), "command": cfg.command}
    body.update(res.body)
    return json.dumps(body, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, required=True, help="level N >= 3")
    common.add_argument("--phi", required=True, help="phi-file with lines 'a b num/den'")
    common.add_argument("--p", type=int, help="odd prime not dividing N")
    common.add_argument("--weight", type=int, default=1, help="k")
    common.add_argument("--moment", type=int, help="r")
    common.add_argument("--q-prec", type=int, default=20)
    common.add_argument("--p-prec", type=int, default=6)
    common.add_argument("--g", help='component matrix "a,b;c,d" (default identity)')
    common.add_argument("--format", choices=["json", "csv", "phi"], default="json",
                        help="phi (fourier only) writes a rational result as a phi-file")
    common.add_argument("--out", help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="eiskron", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "fourier":
            sp.add_argument("--transform", choices=sorted(TRANSFORMS), default="p1")
    return parser


def _config(args) -> JobConfig:
    return JobConfig(command=args.command, N=args.level, phi_path=args.phi, p=args.p,
                     k=args.weight, r=args.moment, q_prec=args.q_prec, p_prec=args.p_prec,
                     g=args.g, fmt=args.format, out=args.out, transform=getattr(args, "transform", "p1"))


def run(cfg: JobConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        g = cfg.validate()
        phi = read_phi_file(cfg.phi_path, cfg.N)
        res = COMMANDS[cfg.command](cfg, phi, g)
    except (ConfigError, ParameterError, PrecisionError, NotPIntegralError) as exc:
        print(f"eiskron: configuration error: {exc}", file=stderr)
        return EXIT_CONFIG
    text = render(cfg, res)
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"eiskron: cannot write {cfg.out}: {exc.strerror}", file=stderr)
            return EXIT_CONFIG
    else:
        stdout.write(text)
    ok = True if isinstance(res, str) else res.ok
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(_config(args))


if __name__ == "__main__":
    sys.exit(main())
