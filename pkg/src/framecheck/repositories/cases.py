import logging
from collections.abc import Mapping
from pathlib import Path

import yaml
from pydantic import ValidationError

from framecheck.core.models.case import CaseSpec
from framecheck.core.models.character import CharacterError
from framecheck.core.utils import dump_yaml, load_yaml
from framecheck.repositories.base import BaseRepository
from framecheck.services.catalog import check_exponent_divisor, classical_case

logger = logging.getLogger(__name__)

BUILTIN_DIR = Path(__file__).resolve().parents[1] / "cases"


class CaseFileError(ValueError):
    """A case document cannot be read or does not validate."""

    def __init__(self, source: str, message: str):
        super().__init__(f"{source}: {message}")
        self.source = source


class UnknownCaseError(LookupError):
    pass


def _describe_errors(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
        for err in error.errors()
    )


def load_case(document: str | Mapping, source: str = "<document>") -> CaseSpec:
    """Validate a case from YAML text or an already parsed mapping."""
    if isinstance(document, str):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as e:
            raise CaseFileError(source, f"invalid YAML: {e}") from e
    if not isinstance(document, Mapping):
        raise CaseFileError(source, "a case document must be a mapping")
    try:
        case = CaseSpec.model_validate(dict(document))
    except ValidationError as e:
        raise CaseFileError(source, _describe_errors(e)) from e
    try:
        check_exponent_divisor(case)
    except CharacterError as e:
        raise CaseFileError(source, str(e)) from e
    return case


def read_case_file(path: Path) -> CaseSpec:
    try:
        data = load_yaml(path)
    except (OSError, yaml.YAMLError) as e:
        raise CaseFileError(str(path), f"unreadable: {e}") from e
    if not data:
        raise CaseFileError(str(path), "missing or empty case file")
    return load_case(data, source=str(path))


def dump_case(case: CaseSpec) -> str:
    """YAML text that :func:`load_case` reads back to an equal case."""
    return dump_yaml(case.model_dump(mode="json", by_alias=True))


class CaseRepository(BaseRepository[CaseSpec]):
    """Builtin cases (shipped YAML, in proof order) followed by user cases from ``cases_dir``."""

    def __init__(self, cases_dir: Path | None = None, builtin_dir: Path = BUILTIN_DIR):
        super().__init__()
        self.cases_dir = cases_dir
        self.builtin_dir = builtin_dir

    def _load(self) -> dict[str, CaseSpec]:
        cases: dict[str, CaseSpec] = {}
        dirs = [self.builtin_dir] + ([self.cases_dir] if self.cases_dir else [])
        for directory in dirs:
            for path in sorted(directory.glob("*.yaml")):
                case = read_case_file(path)
                if case.name in cases:
                    logger.warning(f"{path}: case {case.name} already defined, skipped")
                    continue
                cases[case.name] = case
        logger.debug(f"Loaded {len(cases)} cases")
        return cases

    def get(self, name: str) -> CaseSpec:
        case = self.get_by_name(name)
        if case is None:
            known = ", ".join(self.items)
            raise UnknownCaseError(f"Unknown case '{name}' (known: {known})")
        return case

    def resolve(self, name: str | None = None, case_file: Path | None = None) -> CaseSpec:
        """A case from a file when given, else by name."""
        if case_file is not None:
            return read_case_file(case_file)
        if name is None:
            raise UnknownCaseError("Either a case name or a case file is required")
        return self.get(name)

    def classical(self, family: str, n: int) -> CaseSpec:
        """The classical family ``family`` at rank ``n``."""
        return classical_case(self.get(family), n)


def builtin_cases() -> list[CaseSpec]:
    return list(CaseRepository().list_all())
