"""Reactions, enabledness and the cumulative result function."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    Background,
    BackgroundMismatch,
    Subobject,
    SurfError,
    intersect,
    is_included,
    union_all,
)


class EmptyReactant(SurfError):
    pass


class EmptyProduct(SurfError):
    pass


class InhibitorCoreNotIncluded(SurfError):
    pass


class DuplicateReaction(SurfError):
    pass


@dataclass(frozen=True)
class Reaction:
    """``(reactant, (inhibitor, inhibitor_core), product)``.

    ``inhibitor_core`` is kept as a subobject of the background lying inside
    ``inhibitor``: the reaction is blocked by whatever part of the inhibitor
    outside the core is present in the state.
    """

    id: str
    reactant: Subobject
    inhibitor: Subobject
    inhibitor_core: Subobject
    product: Subobject

    @property
    def background(self) -> Background:
        return self.reactant.background

    @property
    def uninhibited(self) -> bool:
        return self.inhibitor.is_empty()

    def triple(self) -> tuple[Subobject, Subobject, Subobject, Subobject]:
        return (self.reactant, self.inhibitor, self.inhibitor_core, self.product)

    def __repr__(self) -> str:
        inh = "-" if self.uninhibited else f"({self.inhibitor!r} ⊇ {self.inhibitor_core!r})"
        return f"Reaction({self.id!r}: {self.reactant!r}, {inh}, {self.product!r})"


def make_reaction(id: str, reactant: Subobject, product: Subobject,
                  inhibitor: Subobject | None = None, inhibitor_core: Subobject | None = None) -> Reaction:
    """Validated reaction; leaving out the inhibitor gives an uninhibited one.

    Without a core, any overlap between the state and the inhibitor blocks it.
    """
    bg = reactant.background
    if inhibitor is None:
        inhibitor = bg.empty()
    if inhibitor_core is None:
        inhibitor_core = bg.empty()
    for s in (product, inhibitor, inhibitor_core):
        if s.background.id != bg.id:
            raise BackgroundMismatch(f"reaction {id!r} mixes backgrounds {bg.id!r} and {s.background.id!r}")
    if reactant.is_empty():
        raise EmptyReactant(f"reaction {id!r} has an empty reactant")
    if product.is_empty():
        raise EmptyProduct(f"reaction {id!r} has an empty product")
    if not is_included(inhibitor_core, inhibitor):
        raise InhibitorCoreNotIncluded(f"reaction {id!r}: inhibitor core is not inside the inhibitor")
    return Reaction(id, reactant, inhibitor, inhibitor_core, product)


def _check(a: Reaction, t: Subobject) -> None:
    if a.reactant.background.id != t.background.id:
        raise BackgroundMismatch(
            f"reaction {a.id!r} over {a.reactant.background.id!r} applied to state of {t.background.id!r}")


def is_enabled(a: Reaction, t: Subobject) -> bool:
    _check(a, t)
    return is_included(a.reactant, t) and is_included(intersect(t, a.inhibitor), a.inhibitor_core)


def result_of_reaction(a: Reaction, t: Subobject) -> Subobject:
    return a.product if is_enabled(a, t) else t.background.empty()


def result_of_set(reactions: Iterable[Reaction], t: Subobject) -> Subobject:
    bg = t.background
    return union_all(bg, [result_of_reaction(a, t) for a in reactions])


class ReactionSystem:
    """A background together with a finite set of reactions over it.

    Reactions are indexed by one element of their reactant, so evaluating a
    state only tests reactions whose indexed element is present.
    """

    def __init__(self, background: Background, reactions: Iterable[Reaction] = (), name: str = ""):
        self.background = background
        self.name = name or background.id
        reactions = tuple(reactions)
        ids = set()
        for a in reactions:
            if a.id in ids:
                raise DuplicateReaction(f"reaction id {a.id!r} used twice")
            ids.add(a.id)
            if a.background.id != background.id:
                raise BackgroundMismatch(f"reaction {a.id!r} is not over {background.id!r}")
        self.reactions = reactions
        self._by_id = {a.id: a for a in reactions}
        self._order = {a.id: i for i, a in enumerate(reactions)}
        self._index: dict | None = None

    def __len__(self) -> int:
        return len(self.reactions)

    def __iter__(self):
        return iter(self.reactions)

    def __getitem__(self, id: str) -> Reaction:
        return self._by_id[id]

    def __repr__(self) -> str:
        return f"<ReactionSystem {self.name!r}: {len(self.reactions)} reactions over {self.background.id!r}>"

    def _trigger_index(self) -> dict:
        if self._index is None:
            index: dict = {}
            for a in self.reactions:
                # the rarest-looking element: prefer the last component (edges over vertices)
                trigger = max(a.reactant.elements(), key=lambda e: (self.background.component_index(e[0]), str(e[1])))
                index.setdefault(trigger, []).append(a)
            self._index = index
        return self._index

    def candidates(self, t: Subobject) -> list[Reaction]:
        """Reactions whose reactant could be inside ``t``, in declaration order."""
        index = self._trigger_index()
        found = []
        for e in t.elements():
            found.extend(index.get(e, ()))
        found.sort(key=lambda a: self._order[a.id])
        return found

    def enabled(self, t: Subobject) -> list[Reaction]:
        if t.background.id != self.background.id:
            raise BackgroundMismatch(f"state of {t.background.id!r} given to system over {self.background.id!r}")
        return [a for a in self.candidates(t) if is_enabled(a, t)]

    def result(self, t: Subobject) -> Subobject:
        return union_all(self.background, [a.product for a in self.enabled(t)])

    def triples(self) -> set[tuple]:
        return {a.triple() for a in self.reactions}


def result_of_system(system: ReactionSystem, t: Subobject) -> Subobject:
    return system.result(t)


def enabled_ids(system: ReactionSystem, t: Subobject) -> list[str]:
    return [a.id for a in system.enabled(t)]
