"""Command-line surface: normalize, verify, matrix, derive.

Exit codes: 0 all checks pass / normal output, 1 verification failure,
2 usage or parse error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import frontend, rmatrix, star, suites
from .algebra import Expr
from .rewrite import normalize
from .scalars import ParamScalar


class _UsageExit(SystemExit):
    pass


def _parse_expr(text: str) -> Expr:
    try:
        return frontend.parse(text)
    except frontend.ParseError as exc:
        click.echo("parse error: %s" % exc, err=True)
        sys.exit(2)


def _parse_subst(spec: str):
    if "=" not in spec:
        click.echo("bad substitution %r (expected name=value)" % spec, err=True)
        sys.exit(2)
    name, _, value = spec.partition("=")
    name = name.strip()
    if name not in ("h", "hp"):
        click.echo("unknown parameter %r in substitution" % name, err=True)
        sys.exit(2)
    replacement = _parse_expr(value.strip())
    if set(replacement.terms) - {()}:
        click.echo("substitution value %r is not a scalar" % value, err=True)
        sys.exit(2)
    return name, replacement.terms.get((), ParamScalar.zero())


def _emit(e: Expr, fmt: str):
    if fmt == "text":
        click.echo(frontend.to_text(e))
    elif fmt == "latex":
        click.echo(frontend.to_latex(e))
    else:
        click.echo(frontend.to_json(e))


@click.group()
def cli():
    """Exact symbolic calculus on the two-parameter quantum h-exterior plane."""


@cli.command("normalize")
@click.argument("expr")
@click.option("--subst", "substs", multiple=True,
              help="Parameter substitution, e.g. hp=-h or h=0 (repeatable).")
@click.option("--format", "fmt", type=click.Choice(["text", "latex", "json"]),
              default="text", show_default=True)
def cmd_normalize(expr, substs, fmt):
    """Reduce EXPR to its normal form."""
    from .rewrite import default_table

    e = _parse_expr(expr)
    table = default_table()
    for spec in substs:
        name, value = _parse_subst(spec)
        try:
            e = e.subst_params(name, value)
            table = table.substituted(name, value)
        except ValueError as exc:
            click.echo("substitution error: %s" % exc, err=True)
            sys.exit(2)
    _emit(normalize(e, table), fmt)


@cli.command("verify")
@click.option("--suite", "suite_name", default="all", show_default=True,
              help="One of: all, calculus, rmatrix, confluence, phase-space, limits.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@click.option("--negative-control", is_flag=True, hidden=True,
              help="Corrupt the exchange matrix first; the run must fail.")
def cmd_verify(suite_name, as_json, negative_control):
    """Run a verification suite; exit 0 iff every check passes."""
    kwargs = {}
    if negative_control:
        suite_name = "rmatrix"
        kwargs["corrupt"] = True
    try:
        reports = suites.run_suite(suite_name, **kwargs)
    except KeyError:
        click.echo("unknown suite %r" % suite_name, err=True)
        sys.exit(2)
    if as_json:
        payload = [r.to_json_obj() for r in reports]
        click.echo(json.dumps(payload[0] if len(payload) == 1 else payload,
                              sort_keys=True))
    else:
        for report in reports:
            for check in report.checks:
                status = "PASS" if check.passed else "FAIL"
                line = "%s %s/%s" % (status, report.suite, check.name)
                if not check.passed and check.residual != "0":
                    line += "  residual: %s" % check.residual
                click.echo(line)
            click.echo("suite %s: %s" % (report.suite,
                                         "pass" if report.passed else "FAIL"))
    sys.exit(0 if all(r.passed for r in reports) else 1)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        click.echo("malformed rational %r" % text, err=True)
        sys.exit(2)


@cli.command("matrix")
@click.option("--t", "t_text", default="0", show_default=True,
              help="Rational evaluation point of the consistency family.")
@click.option("--format", "fmt", type=click.Choice(["text", "latex", "json"]),
              default="text", show_default=True)
def cmd_matrix(t_text, fmt):
    """Print the 4x4 exchange matrix C(t); t=0 is the calculus' fixed matrix."""
    t = _parse_rational(t_text)
    m = rmatrix.build_c(t)
    rows = [[frontend._scalar_standalone(entry) for entry in row] for row in m.rows]
    if fmt == "text":
        width = max(len(cell) for row in rows for cell in row)
        for row in rows:
            click.echo("[ " + "  ".join(cell.rjust(width) for cell in row) + " ]")
    elif fmt == "latex":
        latex_rows = [
            " & ".join(frontend._scalar_latex(entry) for entry in row)
            for row in m.rows
        ]
        click.echo("\\begin{array}{cccc}\n%s\n\\end{array}" % " \\\\\n".join(latex_rows))
    else:
        click.echo(json.dumps({"t": str(t), "rows": rows}, sort_keys=True))


@cli.command("derive")
@click.argument("target")
@click.option("--hprime", type=click.Choice(["generic", "minus-h", "equal-h"]),
              default="generic", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "latex", "json"]),
              default="text", show_default=True)
def cmd_derive(target, hprime, fmt):
    """Print a derived relation set; the only TARGET is 'phase-space'."""
    if target != "phase-space":
        click.echo("unknown derivation target %r" % target, err=True)
        sys.exit(2)
    relations = star.phase_space_relations(hprime)
    if hprime == "generic":
        norm = normalize
    else:
        from .rewrite import default_table
        from .scalars import ParamScalar

        replacement = -ParamScalar.h() if hprime == "minus-h" else ParamScalar.h()
        spec_table = default_table().substituted("hp", replacement)
        norm = lambda e: normalize(e.subst_params("hp", replacement), spec_table)
    if fmt == "json":
        payload = [
            {
                "name": rel.name,
                "relation": rel.display,
                "lhs": frontend.to_text(norm(rel.lhs)),
                "rhs": frontend.to_text(norm(rel.rhs)),
                "residual": frontend.to_text(norm(rel.lhs) - norm(rel.rhs)),
            }
            for rel in relations
        ]
        click.echo(json.dumps(payload, sort_keys=True))
        return
    render = frontend.to_latex if fmt == "latex" else frontend.to_text
    for rel in relations:
        click.echo("%s: %s   [in generators: %s = %s]"
                   % (rel.name, rel.display,
                      render(norm(rel.lhs)), render(norm(rel.rhs))))


def main():
    cli(prog_name="hplane")


if __name__ == "__main__":
    main()
