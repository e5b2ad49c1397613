import importlib
import pkgutil
from types import ModuleType
from typing import Callable

from segre_index.formatters.base_formatter import BaseFormatter
from segre_index.verifiers.base_verifier import BaseVerifier
from segre_index import formatters, verifiers
from segre_index.errors import SchemaError

_name_to_formatter: dict[str, type[BaseFormatter]] = {}
_formatter_to_names: dict[type[BaseFormatter], list[str]] = {}

_name_to_verifier: dict[str, type[BaseVerifier]] = {}
_verifier_to_names: dict[type[BaseVerifier], list[str]] = {}


def _register(name_to_cls: dict, cls_to_names: dict, names: tuple, cls: type) -> type:
    for name in names:
        key = name.lower()
        name_to_cls[key] = cls
        cls_to_names.setdefault(cls, [])
        if key not in cls_to_names[cls]:
            cls_to_names[cls].append(key)
    return cls


def register_formatter(
    *names: str,
) -> Callable[[type[BaseFormatter]], type[BaseFormatter]]:
    """
    Class decorator to register a formatter under a primary name plus aliases.
    Usage:
        @register_formatter("table", "human", "text")
        class TableFormatter(BaseFormatter): ...
    """

    def decorator(cls: type[BaseFormatter]) -> type[BaseFormatter]:
        return _register(_name_to_formatter, _formatter_to_names, names, cls)

    return decorator


def register_verifier(
    *names: str,
) -> Callable[[type[BaseVerifier]], type[BaseVerifier]]:
    """
    Class decorator to register a verification mode under a primary name plus aliases.
    Usage:
        @register_verifier("conic-identity")
        class ConicIdentityVerifier(BaseVerifier): ...
    """

    def decorator(cls: type[BaseVerifier]) -> type[BaseVerifier]:
        return _register(_name_to_verifier, _verifier_to_names, names, cls)

    return decorator


def get_formatter(name: str) -> BaseFormatter:
    """
    Instantiate a formatter by any of its registered names.
    """
    try:
        return _name_to_formatter[name.lower()]()
    except KeyError:
        raise SchemaError(f"No formatter registered for '{name}'")


def get_verifier(name: str) -> BaseVerifier:
    """
    Instantiate a verification mode by any of its registered names.
    """
    try:
        return _name_to_verifier[name.lower()]()
    except KeyError:
        raise SchemaError(f"No verification mode registered for '{name}'")


def _available(cls_to_names: dict) -> list[tuple[str, list[str]]]:
    out = [(names[0], names[1:]) for names in cls_to_names.values()]
    return sorted(out, key=lambda x: x[0])


def get_available_formatters() -> list[tuple[str, list[str]]]:
    """
    Returns a list of (primary_name, [alias1, alias2, ...]) tuples,
    sorted by primary_name.
    """
    return _available(_formatter_to_names)


def get_available_verifiers() -> list[tuple[str, list[str]]]:
    """
    Returns a list of (primary_name, [alias1, alias2, ...]) tuples,
    sorted by primary_name.
    """
    return _available(_verifier_to_names)


def _auto_import(pkg: ModuleType) -> None:
    """
    Dynamically import all submodules in the given package so
    that @register_* decorators actually run.
    """
    for finder, name, is_pkg in pkgutil.iter_modules(pkg.__path__):
        if name.startswith("_"):
            continue
        module = importlib.import_module(f"{pkg.__name__}.{name}")
        if is_pkg:
            _auto_import(module)


_auto_import(formatters)
_auto_import(verifiers)
