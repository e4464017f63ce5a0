import logging
from pathlib import Path

import click

from framecheck.core.config import AdamsMode, get_settings

logger = logging.getLogger(__name__)

SOURCES = ["computed", "printed", "both"]


def _repository():
    from framecheck.repositories.cases import CaseRepository

    return CaseRepository(cases_dir=get_settings().cases_dir)


def _all_cases():
    """Every catalog case, or exit with status 2 when a case file is broken."""
    from framecheck.repositories.cases import CaseFileError

    try:
        return list(_repository().list_all())
    except CaseFileError as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise SystemExit(2)


def _load_case(name: str | None, case_file: Path | None, rank: int | None):
    """Resolve a case or exit with status 2."""
    from framecheck.repositories.cases import CaseFileError, UnknownCaseError
    from framecheck.services.catalog import classical_case

    if case_file is None and name and Path(name).suffix in (".yaml", ".yml"):
        if Path(name).is_file():
            case_file = Path(name)
    try:
        case = _repository().resolve(name, case_file)
        return classical_case(case, rank) if rank is not None else case
    except (CaseFileError, UnknownCaseError, ValueError) as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise SystemExit(2)


def _case_options(func):
    func = click.option(
        "--rank", type=click.IntRange(min=1), default=None, help="Rank n of a classical family"
    )(func)
    func = click.option(
        "--case-file",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None,
        help="YAML case document instead of a builtin case",
    )(func)
    return func


def _relation_options(func):
    func = click.option(
        "--adams-mode",
        type=click.Choice([m.value for m in AdamsMode]),
        default=None,
        help="Adams relations: one per generator (spanning) or the default k-sets (listed)",
    )(func)
    func = click.option(
        "--i-max", type=click.IntRange(min=0), default=None, help="Largest shift i"
    )(func)
    func = click.option(
        "--window", type=click.IntRange(min=1), default=None, help="Generator window bound N"
    )(func)
    func = click.option(
        "--source", type=click.Choice(SOURCES), default="both", help="Relation source"
    )(func)
    func = click.option("--prime", "-p", type=int, default=2, show_default=True)(func)
    return func


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging")
def cli(verbose: bool) -> None:
    """framecheck: machine-checked [G, L] = 0 proofs at the primes 2 and 3."""
    level = logging.DEBUG if verbose else get_settings().log_level.upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)-8s %(name)s — %(message)s",
        datefmt="%H:%M:%S",
    )


@cli.command()
@click.argument("case_name", required=False)
@_case_options
@_relation_options
@click.option(
    "--emit-certificate",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the certificate file here when the verdict holds",
)
@click.option("--json", "as_json", is_flag=True, help="Print the full run report as JSON")
def verify(
    case_name: str | None,
    case_file: Path | None,
    rank: int | None,
    prime: int,
    source: str,
    window: int | None,
    i_max: int | None,
    adams_mode: str | None,
    emit_certificate: Path | None,
    as_json: bool,
) -> None:
    """Decide t = 0 at PRIME for a case; exit status 0 iff it holds."""
    from framecheck.services.verification import run_case

    settings = get_settings()
    case = _load_case(case_name, case_file, rank)
    report = run_case(
        case,
        prime,
        source=source,
        window=window or settings.window,
        i_max=settings.i_max if i_max is None else i_max,
        adams_mode=adams_mode or settings.adams_mode,
        certificate_path=emit_certificate,
    )

    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        counts = ", ".join(f"{k}: {v}" for k, v in report.relation_counts.items())
        click.echo(f"{report.case} p={report.prime} source={report.source}")
        click.echo(f"  relations: {counts}; dropped: {report.dropped_relations}")
        m = "∞" if report.minimal_multiple is None else report.minimal_multiple
        if report.zero_at_p:
            status = "verified" if report.certificate_verified else "NOT verified"
            click.echo(f"[OK] t = 0 at p={prime} (m = {m}, certificate {status})")
            if report.certificate_path:
                click.echo(f"  certificate: {report.certificate_path}")
            for tag in report.unbalanced_support:
                click.echo(f"  [WARN] rests on the unbalanced printed display {tag}")
        else:
            click.echo(f"[FAIL] t is not shown to vanish at p={prime} (m = {m})")
            if report.dropped_relations:
                click.echo(
                    f"  {report.dropped_relations} dropped relations; try a larger --window"
                )
        for failure in report.failures:
            click.echo(f"  failure: {failure}")
    raise SystemExit(0 if report.zero_at_p else 1)


@cli.command()
@click.argument("case_name", required=False)
@_case_options
@click.option("--lambda", "lambda_power", type=click.IntRange(min=1), default=1, show_default=True)
def expand(
    case_name: str | None, case_file: Path | None, rank: int | None, lambda_power: int
) -> None:
    """Print the restriction character of λ^j, sorted by exponent."""
    from framecheck.core.models.character import dim
    from framecheck.services.catalog import resolve_character

    case = _load_case(case_name, case_file, rank)
    try:
        character = resolve_character(case, lambda_power)
    except ValueError as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise click.Abort()
    click.echo(f"{case.name} λ^{lambda_power}: dim {dim(character)}")
    for exponent, coeff in character.exponents().items():
        click.echo(f"  γ^{exponent}: {coeff}")


@cli.command()
@click.argument("case_name")
@click.argument("identity")
@click.option(
    "--rank", type=click.IntRange(min=1), default=None, help="Rank n of a classical family"
)
@_relation_options
@click.option(
    "--emit-certificate",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the certificate file here when the identity holds",
)
def check(
    case_name: str,
    identity: str,
    rank: int | None,
    prime: int,
    source: str,
    window: int | None,
    i_max: int | None,
    adams_mode: str | None,
    emit_certificate: Path | None,
) -> None:
    """Check IDENTITY (e.g. "t^8 = 4*t^2 + t^0") at PRIME; exit status 0 iff it holds.

    CASE_NAME is a builtin case or a YAML case file.
    """
    from math import gcd

    from framecheck.core.models.relation import GeneratorWindow
    from framecheck.services.decider import (
        certificate_document,
        identity_order,
        write_certificate,
    )
    from framecheck.services.identities import IdentityParseError, parse_identity
    from framecheck.services.lattice import RelationMatrix, extract_certificate
    from framecheck.services.verification import build_relations

    settings = get_settings()
    case = _load_case(case_name, None, rank)
    try:
        lhs = parse_identity(identity)
    except IdentityParseError as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise SystemExit(2)

    bound = GeneratorWindow(window or settings.window)
    relations = build_relations(
        case,
        prime,
        source,
        bound,
        settings.i_max if i_max is None else i_max,
        adams_mode or settings.adams_mode,
    )
    for failure in relations.failures:
        click.echo(f"  failure: {failure}", err=True)
    matrix = RelationMatrix(relations.all(), bound)
    try:
        m = identity_order(lhs, matrix)
    except ValueError as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise SystemExit(2)

    holds = m is not None and gcd(m, prime) == 1
    shown = "∞" if m is None else m
    if holds:
        click.echo(f"[OK] {identity} holds at p={prime} (order {shown})")
        if emit_certificate and lhs:
            cert = extract_certificate(lhs, m, matrix)
            document = certificate_document(cert, matrix, prime, case.name)
            write_certificate(document, emit_certificate)
            click.echo(f"  certificate: {emit_certificate}")
    else:
        click.echo(f"[FAIL] {identity} is not derived at p={prime} (order {shown})")
    raise SystemExit(0 if holds else 1)


@cli.command()
@click.argument("case_names", nargs=-1)
@click.option("--all", "run_all", is_flag=True, help="Every builtin case at each of its primes")
@click.option(
    "--format", "fmt", type=click.Choice(["json", "markdown"]), default="json", show_default=True
)
@click.option("--source", type=click.Choice(SOURCES), default="both", show_default=True)
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Output file path (default: stdout)",
)
def report(
    case_names: tuple[str, ...], run_all: bool, fmt: str, source: str, output: Path | None
) -> None:
    """Run cases at their primes and emit one report document."""
    from framecheck.services.reporting import render_json, render_markdown, report_entries
    from framecheck.services.verification import run_case

    settings = get_settings()
    if run_all:
        cases = _all_cases()
    elif case_names:
        cases = [_load_case(name, None, None) for name in case_names]
    else:
        raise click.UsageError("Name at least one case or pass --all")

    reports = []
    for case in cases:
        for prime in case.primes:
            path = settings.certificate_dir / f"{case.name}-p{prime}-{source}.json"
            reports.append(
                run_case(
                    case,
                    prime,
                    source=source,
                    window=settings.window,
                    i_max=settings.i_max,
                    adams_mode=settings.adams_mode,
                    certificate_path=path,
                )
            )

    if fmt == "json":
        document = render_json(report_entries(reports))
    else:
        document = render_markdown(reports, [c.name for c in _all_cases()])
    if output is None:
        click.echo(document, nl=False)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(document, encoding="utf-8")
        click.echo(f"[OK] Report written to {output}")


@cli.group()
def cases() -> None:
    """Case catalog commands."""
    pass


@cases.command("list")
def list_cases() -> None:
    """List the builtin cases (and those in FRAMECHECK_CASES_DIR)."""
    from framecheck.core.models.character import dim
    from framecheck.services.catalog import resolve_character

    for case in _all_cases():
        try:
            size = str(dim(resolve_character(case, 1)))
        except ValueError:
            size = "?"
        primes = ",".join(str(p) for p in case.primes)
        click.echo(f"{case.name:<8} {case.group_name:<6} p={primes:<4} dim={size}")


@cli.group()
def certificate() -> None:
    """Certificate file commands."""
    pass


@certificate.command("verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def verify_certificate_cmd(path: Path) -> None:
    """Check a certificate file using nothing but its contents."""
    from framecheck.services.decider import read_certificate, verify_certificate_document
    from framecheck.services.lattice import CertificateError

    try:
        document = read_certificate(path)
    except CertificateError as e:
        click.echo(f"[ERROR] {e}", err=True)
        raise SystemExit(2)
    if verify_certificate_document(document):
        claim = document.claim
        click.echo(f"[OK] {claim.m}·{claim.target} is a combination of {len(document.rows)} rows")
        raise SystemExit(0)
    click.echo("[FAIL] certificate rejected", err=True)
    raise SystemExit(1)


if __name__ == "__main__":
    cli()
