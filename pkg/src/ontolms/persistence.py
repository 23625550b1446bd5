"""Line-oriented text serialization of the ontology store.

One axiom per line, UTF-8, in six kinds::

    Class(<id> <parent>*)
    ObjectProperty(<id> <domain> <range> [inverse=<id>])
    DataProperty(<id> <domain>)
    Individual(<id> <class>+)
    Object(<prop> <subj> <obj>)
    Data(<prop> <subj> "<literal>")

Literals escape only ``"`` and ``\\`` with a backslash. ``#`` lines and blank
lines are ignored. Serialization is deterministic: lines are sorted by kind
(in the order above) then by arguments, and for each inverse property pair
only the direction with the lexicographically smaller property id is written —
the other half is rebuilt by materialization on load. Loading is two-pass
(declarations, then assertions), so a document may order lines freely.
"""

import re
from importlib import resources

from .errors import DocumentSemanticError, DocumentSyntaxError, LmsError
from .ontology import IDENTIFIER_RE, Ontology

_LINE_RE = re.compile(r"([A-Za-z]+)\((.*)\)$")
_KINDS = ("Class", "ObjectProperty", "DataProperty", "Individual", "Object", "Data")


def serialize(store: Ontology) -> str:
    lines: list[str] = []
    with store.read_lock():
        for cid in sorted(store.class_ids()):
            args = [cid, *sorted(store.parents_of(cid))]
            lines.append(f"Class({' '.join(args)})")
        for pid in sorted(store.object_property_ids()):
            decl = store.object_property(pid)
            args = f"{decl.id} {decl.domain} {decl.range}"
            if decl.inverse is not None:
                args += f" inverse={decl.inverse}"
            lines.append(f"ObjectProperty({args})")
        for pid in sorted(store.data_property_ids()):
            decl = store.data_property(pid)
            lines.append(f"DataProperty({decl.id} {decl.domain})")
        for iid in sorted(store.individual_ids()):
            args = [iid, *sorted(store.types_of(iid))]
            lines.append(f"Individual({' '.join(args)})")
        kept = []
        for prop, subj, obj in store.object_assertions():
            inverse = store.object_property(prop).inverse
            if inverse is not None and inverse < prop:
                continue  # the partner line carries this pair
            kept.append((prop, subj, obj))
        for prop, subj, obj in sorted(kept):
            lines.append(f"Object({prop} {subj} {obj})")
        for (prop, subj), value in sorted(store.data_assertions().items()):
            lines.append(f'Data({prop} {subj} "{_escape(value)}")')
    return "\n".join(lines) + ("\n" if lines else "")


def parse(document: str) -> Ontology:
    """Build a fresh store from a document, re-validating every invariant."""
    rows = _scan(document)
    store = Ontology()
    _load_classes(store, [r for r in rows if r[1] == "Class"])
    _load_object_properties(store, [r for r in rows if r[1] == "ObjectProperty"])
    for lineno, _, args in (r for r in rows if r[1] == "DataProperty"):
        _apply(lineno, store.declare_data_property, args[0], args[1])
    for lineno, _, args in (r for r in rows if r[1] == "Individual"):
        for class_id in args[1:]:
            _apply(lineno, store.add_individual, args[0], class_id)
    for lineno, kind, args in rows:
        if kind == "Object":
            _apply(lineno, store.assert_object, args[0], args[1], args[2])
        elif kind == "Data":
            _apply(lineno, store.assert_data, args[0], args[1], args[2])
    return store


def save(store: Ontology, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(store))


def load(path) -> Ontology:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def seed_document() -> str:
    return resources.files(__package__).joinpath("data/seed.onto").read_text("utf-8")


def load_seed() -> Ontology:
    return parse(seed_document())


# --- scanning ----------------------------------------------------------------

def _scan(document: str) -> list[tuple[int, str, tuple]]:
    rows = []
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise DocumentSyntaxError(lineno, f"not an axiom line: {line!r}")
        kind, body = m.group(1), m.group(2)
        if kind not in _KINDS:
            raise DocumentSyntaxError(lineno, f"unknown axiom kind {kind!r}")
        if kind == "Data":
            args = _data_args(body, lineno)
        else:
            args = tuple(body.split())
            _check_arity(kind, args, lineno)
            if kind == "ObjectProperty" and len(args) == 4:
                if not args[3].startswith("inverse="):
                    raise DocumentSyntaxError(
                        lineno, "fourth argument must be inverse=<id>")
                args = (*args[:3], args[3][len("inverse="):])
                idents = args
            else:
                idents = args
            for ident in idents:
                if not IDENTIFIER_RE.match(ident):
                    raise DocumentSyntaxError(lineno, f"bad identifier {ident!r}")
        rows.append((lineno, kind, args))
    return rows


_ARITY = {
    "Class": (1, None),
    "ObjectProperty": (3, 4),
    "DataProperty": (2, 2),
    "Individual": (2, None),
    "Object": (3, 3),
}


def _check_arity(kind: str, args: tuple, lineno: int) -> None:
    lo, hi = _ARITY[kind]
    if len(args) < lo or (hi is not None and len(args) > hi):
        raise DocumentSyntaxError(
            lineno, f"{kind} takes {lo}{'' if hi == lo else '+' if hi is None else f'..{hi}'} "
                    f"arguments, got {len(args)}")


def _data_args(body: str, lineno: int) -> tuple:
    m = re.match(r"(\S+)\s+(\S+)\s+\"", body)
    if m is None:
        raise DocumentSyntaxError(lineno, 'Data takes <prop> <subj> "<literal>"')
    prop, subj = m.group(1), m.group(2)
    for ident in (prop, subj):
        if not IDENTIFIER_RE.match(ident):
            raise DocumentSyntaxError(lineno, f"bad identifier {ident!r}")
    out: list[str] = []
    i = m.end()
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body) or body[i + 1] not in ('"', "\\"):
                raise DocumentSyntaxError(lineno, "invalid escape in literal")
            out.append(body[i + 1])
            i += 2
        elif ch == '"':
            if body[i + 1:].strip():
                raise DocumentSyntaxError(lineno, "unexpected text after literal")
            return (prop, subj, "".join(out))
        else:
            out.append(ch)
            i += 1
    raise DocumentSyntaxError(lineno, "unterminated literal")


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


# --- declaration passes -------------------------------------------------------

def _load_classes(store: Ontology, rows) -> None:
    # topological order over in-document parent references so a child may be
    # written before its parent
    pending = {}
    for lineno, _, args in rows:
        cid, parents = args[0], tuple(args[1:])
        if cid in pending:
            raise DocumentSemanticError(
                lineno, LmsError(f"class {cid!r} declared twice"))
        pending[cid] = (lineno, parents)
    ready = [cid for cid, (_, parents) in pending.items()
             if not any(p in pending for p in parents)]
    done: set[str] = set()
    while ready:
        cid = ready.pop()
        lineno, parents = pending[cid]
        _apply(lineno, store.declare_class, cid, parents)
        done.add(cid)
        for other, (_, oparents) in pending.items():
            if other not in done and other not in ready and \
                    all(p not in pending or p in done for p in oparents):
                ready.append(other)
    if len(done) != len(pending):
        stuck = min(pending[cid][0] for cid in pending if cid not in done)
        raise DocumentSemanticError(
            stuck, LmsError("class hierarchy in document contains a cycle"))


def _load_object_properties(store: Ontology, rows) -> None:
    decls = {}
    for lineno, _, args in rows:
        pid = args[0]
        if pid in decls:
            raise DocumentSemanticError(
                lineno, LmsError(f"property {pid!r} declared twice"))
        inverse = args[3] if len(args) == 4 else None
        decls[pid] = (lineno, args[1], args[2], inverse)
    for pid, (lineno, _, _, inverse) in decls.items():
        if inverse is None:
            continue
        partner = decls.get(inverse)
        if partner is None or partner[3] != pid:
            raise DocumentSemanticError(lineno, LmsError(
                f"inverse pair {pid!r}/{inverse!r} must declare each other"))
    declared: set[str] = set()
    for pid, (lineno, domain, range_, inverse) in decls.items():
        if pid in declared:
            continue
        if inverse is None or inverse not in declared:
            _apply(lineno, store.declare_object_property, pid, domain, range_)
        else:
            _apply(lineno, store.declare_object_property,
                   pid, domain, range_, inverse)
        declared.add(pid)


def _apply(lineno: int, op, *args):
    try:
        return op(*args)
    except LmsError as exc:
        raise DocumentSemanticError(lineno, exc) from exc
