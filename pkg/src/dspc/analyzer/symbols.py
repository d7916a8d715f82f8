from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional


@dataclass(frozen=True)
class Symbol:
    """One variable of a method activation."""

    name: str
    dtype: str
    stmt: Optional[int] = None  # defining statement, None for inputs
    is_output: bool = False

    @property
    def origin(self) -> str:
        if self.stmt is None:
            return "input"
        return "output" if self.is_output else f"stmt {self.stmt + 1}"


class SymbolTable:
    """Per-method variables in definition order: inputs first, then statement targets."""

    def __init__(self) -> None:
        self._symbols: Dict[str, Symbol] = {}

    def add(self, symbol: Symbol) -> None:
        self._symbols[symbol.name] = symbol

    def get(self, name: str) -> Optional[Symbol]:
        return self._symbols.get(name)

    def dtype(self, name: str) -> Optional[str]:
        symbol = self._symbols.get(name)
        return symbol.dtype if symbol else None

    def __contains__(self, name: object) -> bool:
        return name in self._symbols

    def __getitem__(self, name: str) -> Symbol:
        return self._symbols[name]

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols.values())

    def __len__(self) -> int:
        return len(self._symbols)

    def inputs(self) -> List[Symbol]:
        return [s for s in self if s.stmt is None]

    def locals(self) -> List[Symbol]:
        """Variables bound by statements, outputs included."""
        return [s for s in self if s.stmt is not None]

    def defined_by(self, index: int) -> List[Symbol]:
        return [s for s in self if s.stmt == index]
