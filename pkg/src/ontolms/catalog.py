"""Role-aware application operations over the ontology store.

Every operation takes the acting individual first and checks the role matrix
before touching anything; a denied or failed call mutates nothing. Compound
mutations run under a single writer hold so concurrent readers never observe
half-applied state.

Role matrix (Admin additionally passes every gate):
    add_user          Admin (any role), Teacher (students only)
    delete_user       Admin
    add_course        Admin, Teacher
    delete_course     Admin
    enroll            Student (self)
    assign_teacher    Admin
    upload_resource   Admin, Teacher, Manager
"""

import re
from dataclasses import dataclass

from . import dlquery, schema
from .auth import CredentialStore, generate_password
from .errors import (
    AlreadyEnrolled,
    BadFormatToken,
    CourseNotEmpty,
    DuplicateId,
    DuplicateUserid,
    Forbidden,
    FormatError,
    IdCollidesWithClass,
    InvalidLiteral,
    NotEnrolled,
    ParentOutsideTaxonomy,
    SelfDeletion,
    UnknownCourse,
    UnknownTopic,
    UnknownUser,
)
from .ontology import Ontology
from .vark import STYLES


@dataclass(frozen=True)
class UserAccount:
    individual: str
    role: str
    userid: str | None
    name: str | None
    vark: str | None


@dataclass(frozen=True)
class CourseRecord:
    class_id: str
    course_id: str


@dataclass(frozen=True)
class ResourceRecord:
    id: str
    kind: str
    path: str | None
    format: str | None
    uploader: str | None


class Catalog:
    def __init__(self, store: Ontology, credentials: CredentialStore):
        self._store = store
        self._credentials = credentials

    # --- accounts --------------------------------------------------------

    def role_of(self, individual: str) -> str | None:
        with self._store.read_lock():
            if not self._store.has_individual(individual):
                return None
            for role in schema.ROLE_CLASSES:
                if self._store.is_instance_of(individual, role):
                    return role
            return None

    def account(self, individual: str) -> UserAccount:
        with self._store.read_lock():
            role = self.role_of(individual)
            if role is None:
                raise UnknownUser(f"{individual!r} is not a user account")
            return UserAccount(
                individual=individual,
                role=role,
                userid=self._store.data_values(individual, schema.USERID),
                name=self._store.data_values(individual, schema.NAME),
                vark=self._store.data_values(individual, schema.VARK),
            )

    def find_by_userid(self, userid: str) -> str | None:
        with self._store.read_lock():
            for (prop, subject), value in self._store.data_assertions().items():
                if prop == schema.USERID and value == userid:
                    return subject
        return None

    def add_user(self, actor: str, role: str, userid: str,
                 name: str) -> tuple[UserAccount, str]:
        """Create an account; returns it with its one-time initial password."""
        if role not in schema.ROLE_CLASSES:
            raise FormatError(f"{role!r} is not a role")
        if "@" not in userid or any(ch.isspace() for ch in userid):
            raise FormatError(f"userid {userid!r} must be email-like")
        if "\n" in name or "\r" in name:
            raise InvalidLiteral("name must not contain line breaks")
        with self._store.write_lock():
            actor_role = self._require_role(actor, (schema.ADMIN, schema.TEACHER))
            if actor_role == schema.TEACHER and role != schema.STUDENT:
                raise Forbidden(f"a teacher may only add students, not {role}")
            if self._credentials.has(userid) or self.find_by_userid(userid) is not None:
                raise DuplicateUserid(f"userid {userid!r} already registered")
            individual = self._fresh_individual_id(userid)
            password = generate_password()
            self._credentials.add(userid, role, password)
            try:
                self._store.add_individual(individual, role)
                self._store.assert_data(schema.USERID, individual, userid)
                self._store.assert_data(schema.NAME, individual, name)
            except Exception:
                self._credentials.discard(userid)
                raise
        return self.account(individual), password

    def delete_user(self, actor: str, target: str) -> None:
        with self._store.write_lock():
            self._require_role(actor, (schema.ADMIN,))
            if target == actor:
                raise SelfDeletion("an account cannot delete itself")
            if self.role_of(target) is None:
                raise UnknownUser(f"{target!r} is not a user account")
            userid = self._store.data_values(target, schema.USERID)
            self._store.remove_individual(target)
            if userid is not None:
                self._credentials.discard(userid)

    def set_style(self, individual: str, style: str) -> None:
        if style not in STYLES:
            raise FormatError(f"{style!r} is not a learning style")
        self._store.assert_data(schema.VARK, individual, style)

    # --- courses ---------------------------------------------------------

    def add_course(self, actor: str, class_id: str, parents) -> CourseRecord:
        parents = sorted(set(parents))
        with self._store.write_lock():
            self._require_role(actor, (schema.ADMIN, schema.TEACHER))
            if not parents:
                raise ParentOutsideTaxonomy(
                    f"a course needs at least one parent under {schema.COMPUTER_SCIENCE}")
            for parent in parents:
                if not self._store.has_class(parent) or \
                        not self._store.is_subclass_of(parent, schema.COMPUTER_SCIENCE):
                    raise ParentOutsideTaxonomy(
                        f"{parent!r} is not under {schema.COMPUTER_SCIENCE}")
            course_id = schema.course_individual(class_id)
            if self._store.has_class(class_id) or self._store.has_individual(class_id):
                raise DuplicateId(f"{class_id!r} is already declared")
            if self._store.has_individual(course_id) or self._store.has_class(course_id):
                raise DuplicateId(f"{course_id!r} is already declared")
            self._store.declare_class(class_id, parents)
            self._store.add_individual(course_id, class_id)
            return CourseRecord(class_id, course_id)

    def delete_course(self, actor: str, course: str) -> None:
        """Remove a leaf course: its companion individual and its class."""
        with self._store.write_lock():
            self._require_role(actor, (schema.ADMIN,))
            record = self._resolve_course(course)
            children = [c for c in self._store.class_ids()
                        if record.class_id in self._store.parents_of(c)]
            if children:
                raise CourseNotEmpty(
                    f"{record.class_id!r} still has subtopics: {sorted(children)}")
            others = self._store.instances_of(record.class_id, transitive=False)
            others.discard(record.course_id)
            if others:
                raise CourseNotEmpty(
                    f"{record.class_id!r} still types individuals: {sorted(others)}")
            self._store.remove_individual(record.course_id)
            self._store.remove_class(record.class_id)

    def courses(self) -> list[CourseRecord]:
        with self._store.read_lock():
            records = []
            for class_id in sorted(self._store.class_ids()):
                course_id = schema.course_individual(class_id)
                if self._store.is_subclass_of(class_id, schema.COMPUTER_SCIENCE) \
                        and self._store.has_individual(course_id):
                    records.append(CourseRecord(class_id, course_id))
            return records

    def enroll(self, actor: str, course: str) -> None:
        with self._store.write_lock():
            role = self.role_of(actor)
            if role != schema.STUDENT:
                raise Forbidden(f"only students enroll, {actor!r} is {role}")
            record = self._resolve_course(course)
            if self._store.has_object(schema.IS_PURSUING, actor, record.course_id):
                raise AlreadyEnrolled(
                    f"{actor!r} already pursues {record.course_id!r}")
            self._store.assert_object(schema.IS_PURSUING, actor, record.course_id)
            for teacher in self._store.subjects_of(schema.TEACHES, record.course_id):
                if not self._store.has_object(schema.IS_STUDENT_OF, actor, teacher):
                    self._store.assert_object(schema.IS_STUDENT_OF, actor, teacher)

    def assign_teacher(self, actor: str, teacher: str, course: str) -> None:
        with self._store.write_lock():
            self._require_role(actor, (schema.ADMIN,))
            if self.role_of(teacher) != schema.TEACHER:
                raise UnknownUser(f"{teacher!r} is not a teacher")
            record = self._resolve_course(course)
            if not self._store.has_object(schema.TEACHES, teacher, record.course_id):
                self._store.assert_object(schema.TEACHES, teacher, record.course_id)
            for student in self._store.subjects_of(schema.IS_PURSUING, record.course_id):
                if not self._store.has_object(schema.IS_STUDENT_OF, student, teacher):
                    self._store.assert_object(schema.IS_STUDENT_OF, student, teacher)

    # --- resources -------------------------------------------------------

    def upload_resource(self, actor: str, kind: str, resource_id: str,
                        path: str, format: str, topics) -> ResourceRecord:
        topics = sorted(set(topics))
        with self._store.write_lock():
            self._require_role(
                actor, (schema.ADMIN, schema.TEACHER, schema.MANAGER))
            if kind not in schema.RESOURCE_KINDS:
                raise BadFormatToken(
                    f"{kind!r} is not a resource kind {schema.RESOURCE_KINDS}")
            if format not in schema.FORMAT_TOKENS:
                raise BadFormatToken(
                    f"{format!r} is not one of {schema.FORMAT_TOKENS}")
            if "\n" in path or "\r" in path:
                raise InvalidLiteral("path must not contain line breaks")
            if self._store.has_individual(resource_id):
                raise DuplicateId(f"{resource_id!r} is already declared")
            if self._store.has_class(resource_id):
                raise IdCollidesWithClass(f"{resource_id!r} already names a class")
            for topic in topics:
                if not self._store.has_individual(topic) or \
                        not self._store.is_instance_of(topic, schema.COMPUTER_SCIENCE):
                    raise UnknownTopic(f"{topic!r} is not a known topic")
            self._store.add_individual(resource_id, kind)
            self._store.assert_data(schema.PATH, resource_id, path)
            self._store.assert_data(schema.FORMAT, resource_id, format)
            for topic in topics:
                self._store.assert_object(schema.CONTAINS, resource_id, topic)
            self._store.assert_object(schema.UPLOADED_BY, resource_id, actor)
            return self._resource_record(resource_id)

    def resources_for_learner(self, student: str, course: str) -> list[ResourceRecord]:
        """Resources covering any topic of the course, best-for-style first."""
        with self._store.read_lock():
            record = self._resolve_course(course)
            if not self._store.has_object(schema.IS_PURSUING, student, record.course_id):
                raise NotEnrolled(f"{student!r} does not pursue {record.course_id!r}")
            style = self._store.data_values(student, schema.VARK)
            topics = self._store.instances_of(record.class_id, transitive=True)
            found: set[str] = set()
            for topic in topics:
                found |= self._store.subjects_of(schema.CONTAINS, topic)
            def matches_style(record: ResourceRecord) -> bool:
                return style is not None and \
                    schema.FORMAT_TO_STYLE.get(record.format or "") == style

            records = [self._resource_record(r) for r in found]
            records.sort(key=lambda r: (0 if matches_style(r) else 1, r.id))
            return records

    # --- listings --------------------------------------------------------

    def list_enrolled(self, course: str) -> list[dict]:
        with self._store.read_lock():
            record = self._resolve_course(course)
            expr = dlquery.Value(schema.IS_PURSUING, record.course_id)
            return [
                {
                    "id": student,
                    "name": self._store.data_values(student, schema.NAME),
                    "userid": self._store.data_values(student, schema.USERID),
                }
                for student in dlquery.evaluate(expr, self._store)
            ]

    # --- internals -------------------------------------------------------

    def _require_role(self, actor: str, allowed) -> str:
        role = self.role_of(actor)
        if role == schema.ADMIN or role in allowed:
            return role
        raise Forbidden(f"requires one of {sorted(allowed)}, {actor!r} is {role}")

    def _resolve_course(self, course: str) -> CourseRecord:
        """Accept a taxonomy class id or its companion course individual id."""
        if self._store.has_class(course) and \
                self._store.is_subclass_of(course, schema.COMPUTER_SCIENCE):
            course_id = schema.course_individual(course)
            if self._store.has_individual(course_id):
                return CourseRecord(course, course_id)
        if course.endswith(schema.COURSE_SUFFIX):
            class_id = course[:-len(schema.COURSE_SUFFIX)]
            if self._store.has_class(class_id) and self._store.has_individual(course) \
                    and self._store.is_subclass_of(class_id, schema.COMPUTER_SCIENCE):
                return CourseRecord(class_id, course)
        raise UnknownCourse(f"{course!r} is not an offered course")

    def _resource_record(self, resource_id: str) -> ResourceRecord:
        kind = next((k for k in schema.RESOURCE_KINDS
                     if self._store.is_instance_of(resource_id, k)),
                    schema.RESOURCE)
        uploaders = self._store.object_values(resource_id, schema.UPLOADED_BY)
        return ResourceRecord(
            id=resource_id,
            kind=kind,
            path=self._store.data_values(resource_id, schema.PATH),
            format=self._store.data_values(resource_id, schema.FORMAT),
            uploader=min(uploaders) if uploaders else None,
        )

    def _fresh_individual_id(self, userid: str) -> str:
        local = userid.split("@", 1)[0]
        base = re.sub(r"[^A-Za-z0-9_]", "_", local) or "user"
        if base[0].isdigit():
            base = "u" + base
        candidate, n = base, 2
        while self._store.has_individual(candidate) or self._store.has_class(candidate):
            candidate = f"{base}{n}"
            n += 1
        return candidate
