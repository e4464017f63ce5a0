from typing import Generic, Sequence, TypeVar

from pydantic import BaseModel

T = TypeVar("T", bound=BaseModel)


class BaseRepository(Generic[T]):
    """Read-only repository of named documents, loaded on first access."""

    def __init__(self) -> None:
        self._items: dict[str, T] | None = None

    def _load(self) -> dict[str, T]:
        """Return every entity keyed by name, in listing order."""
        raise NotImplementedError

    @property
    def items(self) -> dict[str, T]:
        if self._items is None:
            self._items = self._load()
        return self._items

    def get_by_name(self, name: str) -> T | None:
        """Get an entity by its name, ignoring case."""
        if name in self.items:
            return self.items[name]
        folded = name.casefold()
        for key, entity in self.items.items():
            if key.casefold() == folded:
                return entity
        return None

    def list_all(self) -> Sequence[T]:
        """Return all entities."""
        return list(self.items.values())
