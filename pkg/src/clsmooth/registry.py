"""Operator registry for clsmooth.

Maps operator names to factory functions so the CLI and the componentwise
lifting can pick an extension operator from a string.
Example: ``registry.create("extension", "cube", provider, order)`` → ``ExtendedFunction``.
"""

from __future__ import annotations

import importlib
import logging
from typing import TYPE_CHECKING, Any

from clsmooth.exceptions import PluginError

if TYPE_CHECKING:
    from collections.abc import Callable

__all__ = ["BUILTIN_MODULES", "OperatorRegistry", "default_registry"]

logger = logging.getLogger(__name__)

# Importing these registers the built-in operators on ``default_registry``.
BUILTIN_MODULES: tuple[str, ...] = ("clsmooth.extension",)


class OperatorRegistry:
    """Factory table keyed by operator family, then operator name.

    With ``auto_discover`` the first lookup imports ``BUILTIN_MODULES``; the
    built-ins register on ``default_registry`` only, so a fresh registry
    stays empty until something is registered on it.

    Usage::

        registry = OperatorRegistry()
        registry.register("extension", "halfspace", extend_halfspace)
        extended = registry.create("extension", "halfspace", provider, order)
    """

    def __init__(self, *, auto_discover: bool = False) -> None:
        self._families: dict[str, dict[str, Callable[..., Any]]] = {}
        self._pending_discovery = auto_discover

    def register(self, category: str, name: str, factory: Callable[..., Any]) -> None:
        """Add ``factory`` under ``category``/``name``.

        Raises:
            PluginError: If the name is taken within the category.
        """
        family = self._families.setdefault(category, {})
        if name in family:
            raise PluginError(f"Operator '{name}' already registered in category '{category}'")
        family[name] = factory
        logger.debug("Registered operator %s/%s", category, name)

    def _discover(self) -> None:
        if not self._pending_discovery:
            return
        self._pending_discovery = False
        for module in BUILTIN_MODULES:
            try:
                importlib.import_module(module)
            except ImportError as e:
                logger.warning("Operator module %s could not be imported: %s", module, e)

    def _lookup(self, category: str, name: str) -> Callable[..., Any]:
        self._discover()
        family = self._families.get(category)
        if family is None:
            raise PluginError(
                f"Unknown operator category '{category}'. Available: {sorted(self._families)}"
            )
        try:
            return family[name]
        except KeyError:
            raise PluginError(
                f"Unknown operator '{name}' in category '{category}'. Available: {sorted(family)}"
            ) from None

    def create(self, category: str, name: str, *args: Any, **kwargs: Any) -> Any:
        """Build an operator; arguments are forwarded to its factory unchanged.

        Raises:
            PluginError: If the category or name is not registered.
        """
        factory = self._lookup(category, name)
        logger.info("Creating operator %s/%s", category, name)
        return factory(*args, **kwargs)

    def list_operators(self, category: str) -> list[str]:
        self._discover()
        return sorted(self._families.get(category, ()))

    def has_operator(self, category: str, name: str) -> bool:
        self._discover()
        return name in self._families.get(category, {})


default_registry = OperatorRegistry(auto_discover=True)
