"""Typed in-memory ontology store.

Holds a multi-parent class hierarchy (a rooted DAG), individuals, object and
data property declarations, and assertion sets. Object properties may be
declared in inverse pairs; asserting one direction materializes the other
atomically, and retraction removes both halves. Data properties are
string-typed and single-valued (last write wins).

All operations validate before mutating, so a failed call leaves the store
exactly as it was. Access is guarded by a coarse reader-writer lock; callers
composing several operations atomically should hold ``write_lock()`` (or
``read_lock()`` for consistent multi-step reads) around the sequence.
"""

import re
from dataclasses import dataclass

from .errors import (
    AssertionNotFound,
    ClassInUse,
    CycleDetected,
    DomainViolation,
    DuplicateId,
    IdCollidesWithClass,
    InvalidIdentifier,
    InvalidLiteral,
    InverseAlreadyBound,
    InverseMismatch,
    RangeViolation,
    UnknownClass,
    UnknownEntity,
    UnknownParent,
)
from .locking import RWLock

IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ClassNode:
    id: str
    parents: frozenset[str]


@dataclass(frozen=True)
class ObjectPropertyDecl:
    id: str
    domain: str
    range: str
    inverse: str | None = None


@dataclass(frozen=True)
class DataPropertyDecl:
    id: str
    domain: str
    # the only supported datatype is string, so none is recorded


def _check_identifier(name: str) -> str:
    if not isinstance(name, str) or not IDENTIFIER_RE.match(name):
        raise InvalidIdentifier(f"{name!r} is not a valid identifier")
    return name


class Ontology:
    """The single source of truth for classes, individuals and assertions.

    Classes and individuals share one namespace; object and data properties
    share another. Object assertions are stored with their materialized
    inverse halves included, so lookups never need inverse-awareness.
    """

    def __init__(self):
        self._lock = RWLock()
        self._classes: dict[str, ClassNode] = {}
        self._individuals: dict[str, set[str]] = {}  # id -> direct types
        self._object_props: dict[str, ObjectPropertyDecl] = {}
        self._data_props: dict[str, DataPropertyDecl] = {}
        self._objects: set[tuple[str, str, str]] = set()  # (prop, subj, obj)
        self._by_prop: dict[str, set[tuple[str, str]]] = {}  # prop -> {(subj, obj)}
        self._data: dict[tuple[str, str], str] = {}  # (prop, subj) -> literal
        self._ancestors_cache: dict[str, frozenset[str]] = {}

    # --- locking -------------------------------------------------------

    def read_lock(self):
        return self._lock.read()

    def write_lock(self):
        return self._lock.write()

    # --- declarations ----------------------------------------------------

    def declare_class(self, class_id: str, parents=()) -> str:
        _check_identifier(class_id)
        parents = set(parents)
        with self._lock.write():
            if class_id in self._classes or class_id in self._individuals:
                raise DuplicateId(f"{class_id!r} is already declared")
            if class_id in parents:
                raise CycleDetected(f"{class_id!r} cannot be its own ancestor")
            for p in parents:
                if p not in self._classes:
                    raise UnknownParent(f"parent class {p!r} is not declared")
            # a fresh class has no children, so self-reference is the only
            # possible cycle at declaration time; checked above
            self._classes[class_id] = ClassNode(class_id, frozenset(parents))
            return class_id

    def declare_object_property(self, prop_id: str, domain: str, range_: str,
                                inverse: str | None = None) -> str:
        _check_identifier(prop_id)
        with self._lock.write():
            if prop_id in self._object_props or prop_id in self._data_props:
                raise DuplicateId(f"property {prop_id!r} is already declared")
            for c in (domain, range_):
                if c not in self._classes:
                    raise UnknownClass(f"class {c!r} is not declared")
            if inverse is not None:
                inv = self._object_props.get(inverse)
                if inv is None:
                    raise InverseMismatch(f"inverse property {inverse!r} is not declared")
                if inv.domain != range_ or inv.range != domain:
                    raise InverseMismatch(
                        f"{prop_id!r} ({domain} -> {range_}) does not mirror "
                        f"{inverse!r} ({inv.domain} -> {inv.range})")
                if inv.inverse is not None:
                    raise InverseAlreadyBound(f"{inverse!r} is already inverse of {inv.inverse!r}")
            self._object_props[prop_id] = ObjectPropertyDecl(prop_id, domain, range_, inverse)
            self._by_prop[prop_id] = set()
            if inverse is not None:
                inv = self._object_props[inverse]
                self._object_props[inverse] = ObjectPropertyDecl(
                    inv.id, inv.domain, inv.range, prop_id)
            return prop_id

    def declare_data_property(self, prop_id: str, domain: str) -> str:
        _check_identifier(prop_id)
        with self._lock.write():
            if prop_id in self._data_props or prop_id in self._object_props:
                raise DuplicateId(f"property {prop_id!r} is already declared")
            if domain not in self._classes:
                raise UnknownClass(f"class {domain!r} is not declared")
            self._data_props[prop_id] = DataPropertyDecl(prop_id, domain)
            return prop_id

    def add_individual(self, individual_id: str, class_id: str) -> str:
        _check_identifier(individual_id)
        with self._lock.write():
            if class_id not in self._classes:
                raise UnknownClass(f"class {class_id!r} is not declared")
            if individual_id in self._classes:
                raise IdCollidesWithClass(
                    f"{individual_id!r} already names a class")
            self._individuals.setdefault(individual_id, set()).add(class_id)
            return individual_id

    # --- assertions ------------------------------------------------------

    def assert_object(self, prop: str, subject: str, obj: str) -> None:
        with self._lock.write():
            decl = self._object_props.get(prop)
            if decl is None:
                raise UnknownEntity(f"object property {prop!r} is not declared")
            for ind in (subject, obj):
                if ind not in self._individuals:
                    raise UnknownEntity(f"individual {ind!r} is not declared")
            if not self._is_instance(subject, decl.domain):
                raise DomainViolation(
                    f"{subject!r} is not an instance of {decl.domain!r}")
            if not self._is_instance(obj, decl.range):
                raise RangeViolation(
                    f"{obj!r} is not an instance of {decl.range!r}")
            self._add_object(prop, subject, obj)
            if decl.inverse is not None:
                self._add_object(decl.inverse, obj, subject)

    def retract_object(self, prop: str, subject: str, obj: str) -> None:
        with self._lock.write():
            if (prop, subject, obj) not in self._objects:
                raise AssertionNotFound(f"{prop}({subject}, {obj}) is not asserted")
            self._drop_object(prop, subject, obj)
            decl = self._object_props[prop]
            if decl.inverse is not None:
                self._drop_object(decl.inverse, obj, subject)

    def assert_data(self, prop: str, subject: str, value: str) -> None:
        with self._lock.write():
            decl = self._data_props.get(prop)
            if decl is None:
                raise UnknownEntity(f"data property {prop!r} is not declared")
            if subject not in self._individuals:
                raise UnknownEntity(f"individual {subject!r} is not declared")
            if not isinstance(value, str):
                raise InvalidLiteral(f"value for {prop!r} must be a string")
            if "\n" in value or "\r" in value:
                raise InvalidLiteral("literals must not contain line breaks")
            if not self._is_instance(subject, decl.domain):
                raise DomainViolation(
                    f"{subject!r} is not an instance of {decl.domain!r}")
            self._data[(prop, subject)] = value

    def retract_data(self, prop: str, subject: str) -> None:
        """Drop a data value if present. Tolerant; used by cascading deletes."""
        with self._lock.write():
            self._data.pop((prop, subject), None)

    # --- queries ---------------------------------------------------------

    def is_subclass_of(self, a: str, b: str) -> bool:
        with self._lock.read():
            for c in (a, b):
                if c not in self._classes:
                    raise UnknownClass(f"class {c!r} is not declared")
            return b in self._ancestors(a)

    def instances_of(self, class_id: str, transitive: bool) -> set[str]:
        with self._lock.read():
            if class_id not in self._classes:
                raise UnknownClass(f"class {class_id!r} is not declared")
            if not transitive:
                return {i for i, ts in self._individuals.items() if class_id in ts}
            return {i for i, ts in self._individuals.items()
                    if any(class_id in self._ancestors(t) for t in ts)}

    def object_values(self, individual: str, prop: str) -> set[str]:
        with self._lock.read():
            if individual not in self._individuals:
                raise UnknownEntity(f"individual {individual!r} is not declared")
            if prop not in self._object_props:
                raise UnknownEntity(f"object property {prop!r} is not declared")
            return {o for s, o in self._by_prop[prop] if s == individual}

    def data_values(self, individual: str, prop: str) -> str | None:
        with self._lock.read():
            if individual not in self._individuals:
                raise UnknownEntity(f"individual {individual!r} is not declared")
            if prop not in self._data_props:
                raise UnknownEntity(f"data property {prop!r} is not declared")
            return self._data.get((prop, individual))

    def subjects_of(self, prop: str, obj: str) -> set[str]:
        """All subjects s with prop(s, obj), asserted or materialized."""
        with self._lock.read():
            if obj not in self._individuals:
                raise UnknownEntity(f"individual {obj!r} is not declared")
            if prop not in self._object_props:
                raise UnknownEntity(f"object property {prop!r} is not declared")
            return {s for s, o in self._by_prop[prop] if o == obj}

    def is_instance_of(self, individual: str, class_id: str) -> bool:
        with self._lock.read():
            if individual not in self._individuals:
                raise UnknownEntity(f"individual {individual!r} is not declared")
            if class_id not in self._classes:
                raise UnknownClass(f"class {class_id!r} is not declared")
            return self._is_instance(individual, class_id)

    def has_object(self, prop: str, subject: str, obj: str) -> bool:
        with self._lock.read():
            return (prop, subject, obj) in self._objects

    # --- introspection (snapshots) ----------------------------------------

    def class_ids(self) -> set[str]:
        with self._lock.read():
            return set(self._classes)

    def has_class(self, class_id: str) -> bool:
        with self._lock.read():
            return class_id in self._classes

    def parents_of(self, class_id: str) -> frozenset[str]:
        with self._lock.read():
            node = self._classes.get(class_id)
            if node is None:
                raise UnknownClass(f"class {class_id!r} is not declared")
            return node.parents

    def individual_ids(self) -> set[str]:
        with self._lock.read():
            return set(self._individuals)

    def has_individual(self, individual_id: str) -> bool:
        with self._lock.read():
            return individual_id in self._individuals

    def types_of(self, individual_id: str) -> set[str]:
        with self._lock.read():
            types = self._individuals.get(individual_id)
            if types is None:
                raise UnknownEntity(f"individual {individual_id!r} is not declared")
            return set(types)

    def object_property(self, prop_id: str) -> ObjectPropertyDecl | None:
        with self._lock.read():
            return self._object_props.get(prop_id)

    def data_property(self, prop_id: str) -> DataPropertyDecl | None:
        with self._lock.read():
            return self._data_props.get(prop_id)

    def object_property_ids(self) -> set[str]:
        with self._lock.read():
            return set(self._object_props)

    def data_property_ids(self) -> set[str]:
        with self._lock.read():
            return set(self._data_props)

    def object_assertions(self) -> set[tuple[str, str, str]]:
        with self._lock.read():
            return set(self._objects)

    def assertions_with(self, prop: str) -> set[tuple[str, str]]:
        with self._lock.read():
            if prop not in self._object_props:
                raise UnknownEntity(f"object property {prop!r} is not declared")
            return set(self._by_prop[prop])

    def data_assertions(self) -> dict[tuple[str, str], str]:
        with self._lock.read():
            return dict(self._data)

    # --- removal (artifact plumbing for account/course deletion) ----------

    def remove_individual(self, individual_id: str) -> None:
        """Remove an individual and every assertion that mentions it."""
        with self._lock.write():
            if individual_id not in self._individuals:
                raise UnknownEntity(f"individual {individual_id!r} is not declared")
            doomed = [(p, s, o) for (p, s, o) in self._objects
                      if s == individual_id or o == individual_id]
            for p, s, o in doomed:
                self._drop_object(p, s, o)
            for key in [k for k in self._data if k[1] == individual_id]:
                del self._data[key]
            del self._individuals[individual_id]

    def remove_class(self, class_id: str) -> None:
        """Remove a leaf class: no subclasses, no direct instances, and no
        property declaration may reference it."""
        with self._lock.write():
            if class_id not in self._classes:
                raise UnknownClass(f"class {class_id!r} is not declared")
            children = [c.id for c in self._classes.values() if class_id in c.parents]
            if children:
                raise ClassInUse(f"{class_id!r} has subclasses: {sorted(children)}")
            typed = [i for i, ts in self._individuals.items() if class_id in ts]
            if typed:
                raise ClassInUse(f"{class_id!r} still types individuals: {sorted(typed)}")
            for decl in self._object_props.values():
                if class_id in (decl.domain, decl.range):
                    raise ClassInUse(f"{class_id!r} is referenced by property {decl.id!r}")
            for ddecl in self._data_props.values():
                if ddecl.domain == class_id:
                    raise ClassInUse(f"{class_id!r} is referenced by property {ddecl.id!r}")
            del self._classes[class_id]
            self._ancestors_cache.clear()

    # --- internals (call with the lock held) -------------------------------

    def _ancestors(self, class_id: str) -> frozenset[str]:
        cached = self._ancestors_cache.get(class_id)
        if cached is not None:
            return cached
        acc = {class_id}
        for p in self._classes[class_id].parents:
            acc |= self._ancestors(p)
        result = frozenset(acc)
        self._ancestors_cache[class_id] = result
        return result

    def _is_instance(self, individual: str, class_id: str) -> bool:
        return any(class_id in self._ancestors(t)
                   for t in self._individuals[individual])

    def _add_object(self, prop, subject, obj):
        self._objects.add((prop, subject, obj))
        self._by_prop[prop].add((subject, obj))

    def _drop_object(self, prop, subject, obj):
        self._objects.discard((prop, subject, obj))
        self._by_prop[prop].discard((subject, obj))
