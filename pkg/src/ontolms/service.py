"""HTTP facade: token-authenticated REST endpoints over the catalog.

Built on the standard library's threading HTTP server so the store's
one-writer/many-readers contract is exercised exactly as designed. Every
response (including errors) is JSON except ``GET /export``, which returns the
ontology document as plain text. All responses carry permissive CORS headers
so a browser client served from another origin can call the API directly.
"""

import json
import re
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from . import dlquery, persistence, quiz, schema, vark
from .auth import CredentialStore, TokenRegistry, authorize
from .catalog import Catalog
from .errors import (
    AlreadyEnrolled,
    AlreadyResolved,
    AssertionNotFound,
    BadFormatToken,
    ClassInUse,
    CourseNotEmpty,
    CycleDetected,
    DocumentSemanticError,
    DocumentSyntaxError,
    DomainViolation,
    DuplicateId,
    DuplicateUserid,
    EmptyQuiz,
    EmptySurvey,
    Forbidden,
    FormatError,
    IdCollidesWithClass,
    IndexOutOfRange,
    InvalidCredentials,
    InvalidIdentifier,
    InvalidLiteral,
    InverseAlreadyBound,
    InverseMismatch,
    LengthMismatch,
    LmsError,
    MissingStyle,
    NoResourceForTopic,
    NotEnrolled,
    ParentOutsideTaxonomy,
    ParseError,
    RangeViolation,
    SelfDeletion,
    Unauthorized,
    UnknownClass,
    UnknownCourse,
    UnknownEntity,
    UnknownLearner,
    UnknownName,
    UnknownParent,
    UnknownQuestion,
    UnknownSession,
    UnknownTopic,
    UnknownUser,
)
from .ontology import Ontology

_STATUS_BY_ERROR: dict[type, int] = {}
for _status, _types in {
    400: (ParseError, FormatError, LengthMismatch, IndexOutOfRange,
          EmptySurvey, EmptyQuiz, BadFormatToken, InvalidLiteral,
          InvalidIdentifier, ParentOutsideTaxonomy, CycleDetected,
          DomainViolation, RangeViolation, InverseMismatch,
          InverseAlreadyBound, DocumentSyntaxError, DocumentSemanticError),
    401: (Unauthorized, InvalidCredentials),
    403: (Forbidden,),
    404: (UnknownClass, UnknownParent, UnknownEntity, UnknownName,
          UnknownUser, UnknownCourse, UnknownTopic, UnknownLearner,
          UnknownQuestion, UnknownSession, AssertionNotFound,
          NoResourceForTopic),
    409: (DuplicateId, DuplicateUserid, IdCollidesWithClass, AlreadyEnrolled,
          AlreadyResolved, SelfDeletion, NotEnrolled, MissingStyle,
          ClassInUse, CourseNotEmpty),
}.items():
    for _t in _types:
        _STATUS_BY_ERROR[_t] = _status


def _status_of(exc: LmsError) -> int:
    return _STATUS_BY_ERROR.get(type(exc), 400)


def default_questionnaire() -> list[vark.SurveyQuestion]:
    text = resources.files(__package__).joinpath(
        "data/vark_questionnaire.txt").read_text("utf-8")
    return vark.load_questionnaire(text)


def default_quiz_bank() -> list[quiz.QuizQuestion]:
    text = resources.files(__package__).joinpath(
        "data/quiz_bank.txt").read_text("utf-8")
    return quiz.load_quiz_bank(text)


# auth requirements per route
_PUBLIC = "public"      # no token
_READ = "read"          # no token when public_read is set, else any token
_ANY = "any"            # any valid token


class _Request:
    def __init__(self, groups, query, body, token, actor):
        self.groups = groups
        self.query = query
        self.body = body
        self.token = token   # AuthToken or None on public routes
        self.actor = actor   # individual id or None on public routes

    def field(self, name, kind):
        value = self.body.get(name) if isinstance(self.body, dict) else None
        if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
            raise FormatError(f"body field {name!r} must be {kind.__name__}")
        return value

    def param(self, name) -> str:
        values = self.query.get(name)
        if not values:
            raise FormatError(f"query parameter {name!r} is required")
        return values[0]


class LmsService:
    def __init__(self, store: Ontology, credentials: CredentialStore, *,
                 questionnaire=None, quiz_bank=None,
                 host: str = "127.0.0.1", port: int = 0,
                 public_read: bool = False, token_ttl: float = 3600.0,
                 clock=time.time, ontology_path: str | Path | None = None):
        self.store = store
        self.credentials = credentials
        self.catalog = Catalog(store, credentials)
        self.tokens = TokenRegistry(token_ttl, clock)
        self.questionnaire = questionnaire if questionnaire is not None \
            else default_questionnaire()
        bank = quiz_bank if quiz_bank is not None else default_quiz_bank()
        self.quiz_bank = {q.id: q for q in bank}
        self.public_read = public_read
        self.ontology_path = Path(ontology_path) if ontology_path else None
        self._host = host
        self._port = port
        self._sessions: dict[str, tuple[quiz.QuizSession, threading.Lock]] = {}
        self._sessions_mutex = threading.Lock()
        self._httpd: ThreadingHTTPServer | None = None
        self._thread: threading.Thread | None = None

        self._routes = [
            ("POST", re.compile(r"/login"), self._ep_login, _PUBLIC),
            ("GET", re.compile(r"/health"), self._ep_health, _PUBLIC),
            ("POST", re.compile(r"/users"), self._ep_add_user,
             frozenset({schema.ADMIN, schema.TEACHER})),
            ("DELETE", re.compile(r"/users/([^/]+)"), self._ep_delete_user,
             frozenset({schema.ADMIN})),
            ("GET", re.compile(r"/courses"), self._ep_courses, _ANY),
            ("POST", re.compile(r"/courses"), self._ep_add_course,
             frozenset({schema.ADMIN, schema.TEACHER})),
            ("DELETE", re.compile(r"/courses/([^/]+)"), self._ep_delete_course,
             frozenset({schema.ADMIN})),
            ("POST", re.compile(r"/courses/([^/]+)/enroll"), self._ep_enroll,
             frozenset({schema.STUDENT})),
            ("POST", re.compile(r"/courses/([^/]+)/teacher"), self._ep_assign_teacher,
             frozenset({schema.ADMIN})),
            ("GET", re.compile(r"/courses/([^/]+)/students"), self._ep_students,
             frozenset({schema.TEACHER})),
            ("POST", re.compile(r"/resources"), self._ep_upload_resource,
             frozenset({schema.ADMIN, schema.TEACHER, schema.MANAGER})),
            ("GET", re.compile(r"/survey"), self._ep_get_survey, _ANY),
            ("POST", re.compile(r"/survey"), self._ep_post_survey, _ANY),
            ("GET", re.compile(r"/learners/([^/]+)/resources"),
             self._ep_learner_resources, _ANY),
            ("POST", re.compile(r"/quiz"), self._ep_start_quiz,
             frozenset({schema.STUDENT})),
            ("POST", re.compile(r"/quiz/([^/]+)/answer"), self._ep_answer,
             frozenset({schema.STUDENT})),
            ("GET", re.compile(r"/quiz/bank"), self._ep_quiz_bank, _ANY),
            ("GET", re.compile(r"/query"), self._ep_query, _READ),
            ("GET", re.compile(r"/export"), self._ep_export, _READ),
        ]

    # --- lifecycle -------------------------------------------------------

    def start(self) -> "LmsService":
        service = self

        class Handler(_Handler):
            pass

        Handler.service = service
        self._httpd = ThreadingHTTPServer((self._host, self._port), Handler)
        self._httpd.daemon_threads = True
        self._thread = threading.Thread(
            # a short poll makes shutdown() return promptly
            target=lambda: self._httpd.serve_forever(poll_interval=0.05),
            name="ontolms-http", daemon=True)
        self._thread.start()
        return self

    @property
    def port(self) -> int:
        if self._httpd is None:
            raise RuntimeError("service is not running")
        return self._httpd.server_address[1]

    @property
    def url(self) -> str:
        return f"http://{self._host}:{self.port}"

    def stop(self, persist: bool = True) -> None:
        if self._httpd is not None:
            self._httpd.shutdown()
            self._httpd.server_close()
            self._httpd = None
        if self._thread is not None:
            self._thread.join(timeout=10)
            self._thread = None
        if persist and self.ontology_path is not None:
            persistence.save(self.store, self.ontology_path)

    # --- dispatch helpers --------------------------------------------------

    def route(self, method: str, path: str):
        saw_path = False
        for m, pattern, handler, auth in self._routes:
            match = pattern.fullmatch(path)
            if match:
                saw_path = True
                if m == method:
                    return match, handler, auth
        if saw_path:
            raise FormatError(f"method {method} not supported on {path}")
        raise UnknownEntity(f"no such endpoint: {path}")

    def authenticate(self, auth, bearer: str | None):
        if auth == _PUBLIC or (auth == _READ and self.public_read):
            return None, None
        if bearer is None:
            raise Unauthorized("missing bearer token")
        required = auth if isinstance(auth, frozenset) else None
        token = authorize(self.tokens, bearer, required)
        actor = self.catalog.find_by_userid(token.userid)
        if actor is None:
            raise Unauthorized("account no longer exists")
        return token, actor

    # --- endpoints ---------------------------------------------------------

    def _ep_login(self, req: _Request):
        userid = req.field("userid", str)
        password = req.field("password", str)
        credential = self.credentials.verify(userid, password)
        token = self.tokens.issue(credential.userid, credential.role)
        return 200, {"token": token.token, "role": token.role,
                     "individual": self.catalog.find_by_userid(userid)}

    def _ep_health(self, req: _Request):
        axioms = len(persistence.serialize(self.store).splitlines())
        return 200, {"status": "ok", "axioms": axioms}

    def _ep_add_user(self, req: _Request):
        account, password = self.catalog.add_user(
            req.actor, req.field("role", str),
            req.field("userid", str), req.field("name", str))
        return 201, {"id": account.individual, "role": account.role,
                     "initialPassword": password}

    def _ep_delete_user(self, req: _Request):
        target = req.groups[0]
        self.catalog.delete_user(req.actor, target)
        return 200, {"deleted": target}

    def _ep_courses(self, req: _Request):
        return 200, {"courses": [
            {"classId": c.class_id, "courseId": c.course_id}
            for c in self.catalog.courses()]}

    def _ep_add_course(self, req: _Request):
        record = self.catalog.add_course(
            req.actor, req.field("id", str), req.field("parents", list))
        return 201, {"classId": record.class_id, "courseId": record.course_id}

    def _ep_delete_course(self, req: _Request):
        self.catalog.delete_course(req.actor, req.groups[0])
        return 200, {"deleted": req.groups[0]}

    def _ep_enroll(self, req: _Request):
        self.catalog.enroll(req.actor, req.groups[0])
        return 200, {"student": req.actor, "course": req.groups[0]}

    def _ep_assign_teacher(self, req: _Request):
        teacher = req.field("teacher", str)
        self.catalog.assign_teacher(req.actor, teacher, req.groups[0])
        return 200, {"teacher": teacher, "course": req.groups[0]}

    def _ep_students(self, req: _Request):
        return 200, {"students": self.catalog.list_enrolled(req.groups[0])}

    def _ep_upload_resource(self, req: _Request):
        record = self.catalog.upload_resource(
            req.actor, req.field("kind", str), req.field("id", str),
            req.field("path", str), req.field("format", str),
            req.field("topics", list))
        return 201, _resource_dict(record)

    def _ep_get_survey(self, req: _Request):
        return 200, {"questions": [
            {"id": q.id, "prompt": q.prompt, "options": list(q.options)}
            for q in self.questionnaire]}

    def _ep_post_survey(self, req: _Request):
        answers = req.field("answers", list)
        scores = vark.score_survey(self.questionnaire, answers)
        style = vark.classify(scores)
        self.catalog.set_style(req.actor, style)
        return 200, {"scores": {"v": scores.v, "a": scores.a,
                                "r": scores.r, "k": scores.k},
                     "style": style}

    def _ep_learner_resources(self, req: _Request):
        learner = req.groups[0]
        if req.actor != learner and req.token.role != schema.ADMIN:
            raise Forbidden("only the learner or an admin may list this")
        records = self.catalog.resources_for_learner(learner, req.param("course"))
        return 200, {"resources": [_resource_dict(r) for r in records]}

    def _ep_start_quiz(self, req: _Request):
        ids = req.field("questions", list)
        questions = []
        for qid in ids:
            question = self.quiz_bank.get(qid)
            if question is None:
                raise UnknownQuestion(f"no question {qid!r} in the bank")
            questions.append(question)
        session = quiz.start_session(self.store, req.actor, questions)
        with self._sessions_mutex:
            self._sessions[session.id] = (session, threading.Lock())
        return 201, {"sessionId": session.id}

    def _ep_answer(self, req: _Request):
        sid = req.groups[0]
        with self._sessions_mutex:
            entry = self._sessions.get(sid)
        if entry is None or entry[0].learner != req.actor:
            raise UnknownSession(f"no quiz session {sid!r}")
        session, lock = entry
        with lock:
            outcome = quiz.submit_answer(
                self.store, session, req.field("question", str),
                req.field("answer", int))
        if isinstance(outcome, quiz.Correct):
            return 200, {"outcome": "correct"}
        if isinstance(outcome, quiz.Hint):
            return 200, {"outcome": "hint", "hint": outcome.text}
        return 200, {"outcome": "recommendation",
                     "resource": outcome.resource, "path": outcome.path}

    def _ep_quiz_bank(self, req: _Request):
        return 200, {"questions": [
            {"id": q.id, "topic": q.topic, "prompt": q.prompt,
             "options": list(q.options)}
            for q in sorted(self.quiz_bank.values(), key=lambda q: q.id)]}

    def _ep_query(self, req: _Request):
        expr = dlquery.parse_query(req.param("dl"))
        return 200, {"individuals": dlquery.evaluate(expr, self.store)}

    def _ep_export(self, req: _Request):
        return 200, persistence.serialize(self.store), "text/plain; charset=utf-8"


def _resource_dict(record) -> dict:
    return {"id": record.id, "kind": record.kind, "path": record.path,
            "format": record.format, "uploader": record.uploader}


class _Handler(BaseHTTPRequestHandler):
    service: LmsService
    protocol_version = "HTTP/1.1"

    def log_message(self, *args):  # keep test output clean
        pass

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_DELETE(self):
        self._dispatch("DELETE")

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _dispatch(self, method: str):
        try:
            parts = urlsplit(self.path)
            path = parts.path.rstrip("/") or "/"
            match, handler, auth = self.service.route(method, path)
            token, actor = self.service.authenticate(auth, self._bearer())
            body = self._json_body()
            req = _Request(match.groups(), parse_qs(parts.query),
                           body, token, actor)
            result = handler(req)
            if len(result) == 3:
                status, payload, content_type = result
                self._send(status, payload.encode("utf-8"), content_type)
            else:
                status, payload = result
                self._send_json(status, payload)
        except LmsError as exc:
            self._send_json(_status_of(exc),
                            {"error": exc.code, "detail": exc.detail})
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": "InternalError", "detail": str(exc)})

    def _bearer(self) -> str | None:
        header = self.headers.get("Authorization", "")
        if header.startswith("Bearer "):
            return header[len("Bearer "):].strip()
        return None

    def _json_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"request body is not valid JSON: {exc}") from None

    def _send_json(self, status: int, payload) -> None:
        self._send(status, json.dumps(payload).encode("utf-8"),
                   "application/json")

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self._cors()
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers",
                         "Authorization, Content-Type")
        self.send_header("Access-Control-Allow-Methods",
                         "GET, POST, DELETE, OPTIONS")
