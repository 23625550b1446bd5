"""Adaptive multiple-choice quizzes with hint-then-recommend feedback.

Every question allows at most two scored answers. A correct answer resolves
the question; a first wrong answer shows the question's hint; a second wrong
answer resolves the question as failed and recommends a study resource that
covers the question's topic, preferring one whose format matches the
learner's stored style.
"""

import secrets
from dataclasses import dataclass, field

from . import schema
from .errors import (
    AlreadyResolved,
    EmptyQuiz,
    FormatError,
    IndexOutOfRange,
    MissingStyle,
    NoResourceForTopic,
    UnknownLearner,
    UnknownQuestion,
    UnknownTopic,
)
from .ontology import Ontology
from .vark import STYLES

# question phases
FIRST_ATTEMPT = "FirstAttempt"
HINT_SHOWN = "HintShown"
RESOLVED = "Resolved"


@dataclass(frozen=True)
class QuizQuestion:
    id: str
    topic: str
    prompt: str
    options: tuple[str, ...]
    correct: int  # 1-based option index
    hint: str


@dataclass
class QuestionProgress:
    question: QuizQuestion
    phase: str = FIRST_ATTEMPT
    hinted: bool = False
    correct: bool | None = None  # set once phase == RESOLVED


@dataclass
class QuizSession:
    id: str
    learner: str
    progress: dict[str, QuestionProgress]  # question id -> progress, in quiz order


# outcomes of submit_answer

@dataclass(frozen=True)
class Correct:
    pass


@dataclass(frozen=True)
class Hint:
    text: str


@dataclass(frozen=True)
class Recommendation:
    resource: str
    path: str


@dataclass(frozen=True)
class QuestionReport:
    question: str
    phase: str
    hinted: bool
    correct: bool | None


@dataclass(frozen=True)
class SessionReport:
    session: str
    learner: str
    first_try: int
    after_hint: int
    recommended: int
    questions: tuple[QuestionReport, ...]


def start_session(store: Ontology, learner: str,
                  questions: list[QuizQuestion]) -> QuizSession:
    with store.read_lock():
        if not store.has_individual(learner) or \
                not store.is_instance_of(learner, schema.STUDENT):
            raise UnknownLearner(f"{learner!r} is not a known student")
        style = store.data_values(learner, schema.VARK)
        if style not in STYLES:
            raise MissingStyle(f"{learner!r} has no classified learning style")
        if not questions:
            raise EmptyQuiz("a quiz needs at least one question")
        for q in questions:
            if not store.has_individual(q.topic):
                raise UnknownTopic(f"question {q.id!r}: no topic {q.topic!r}")
    session_id = "qs-" + secrets.token_hex(8)
    return QuizSession(
        id=session_id,
        learner=learner,
        progress={q.id: QuestionProgress(q) for q in questions},
    )


def submit_answer(store: Ontology, session: QuizSession,
                  question_id: str, answer: int):
    """Score one answer; returns Correct, Hint or Recommendation."""
    prog = session.progress.get(question_id)
    if prog is None:
        raise UnknownQuestion(f"no question {question_id!r} in this session")
    if prog.phase == RESOLVED:
        raise AlreadyResolved(f"question {question_id!r} is already resolved")
    q = prog.question
    if not isinstance(answer, int) or not 1 <= answer <= len(q.options):
        raise IndexOutOfRange(
            f"answer must be an option index 1..{len(q.options)}, got {answer!r}")
    if answer == q.correct:
        prog.phase = RESOLVED
        prog.correct = True
        return Correct()
    if prog.phase == FIRST_ATTEMPT:
        prog.phase = HINT_SHOWN
        prog.hinted = True
        return Hint(q.hint)
    # second wrong answer: resolve as failed and point at a study resource
    prog.phase = RESOLVED
    prog.correct = False
    resource = recommend_resource(store, session.learner, q.topic)
    path = store.data_values(resource, schema.PATH) or ""
    return Recommendation(resource, path)


def recommend_resource(store: Ontology, learner: str, topic: str) -> str:
    """The best study resource covering ``topic`` for this learner.

    Among resources that contain the topic, ones whose format serves the
    learner's style win; ties and the no-match fallback go to the
    lexicographically smallest resource id.
    """
    with store.read_lock():
        style = store.data_values(learner, schema.VARK)
        if style not in STYLES:
            raise MissingStyle(f"{learner!r} has no classified learning style")
        if not store.has_individual(topic):
            raise UnknownTopic(f"no topic {topic!r}")
        candidates = store.subjects_of(schema.CONTAINS, topic)
        if not candidates:
            raise NoResourceForTopic(f"no resource covers {topic!r}")
        matched = {
            r for r in candidates
            if schema.FORMAT_TO_STYLE.get(
                store.data_values(r, schema.FORMAT) or "") == style
        }
        return min(matched) if matched else min(candidates)


def session_report(session: QuizSession) -> SessionReport:
    first_try = after_hint = recommended = 0
    rows = []
    for prog in session.progress.values():
        if prog.phase == RESOLVED:
            if prog.correct and not prog.hinted:
                first_try += 1
            elif prog.correct:
                after_hint += 1
            else:
                recommended += 1
        rows.append(QuestionReport(prog.question.id, prog.phase,
                                   prog.hinted, prog.correct))
    return SessionReport(session.id, session.learner,
                         first_try, after_hint, recommended, tuple(rows))


def load_quiz_bank(text: str) -> list[QuizQuestion]:
    """Parse the quiz bank document format.

    Blocks are separated by blank lines: ``QUIZ <id>``, ``TOPIC <individual>``,
    one prompt line, option lines ``1) ...`` onward (at least two),
    ``ANSWER <index>``, ``HINT <text>``.
    """
    questions: list[QuizQuestion] = []
    seen: set[str] = set()
    for block in _blocks(text):
        if len(block) < 7:
            raise FormatError(f"quiz block too short: {block[0]!r}")
        qid = _keyword_line(block[0], "QUIZ")
        if qid in seen:
            raise FormatError(f"duplicate quiz id {qid!r}")
        seen.add(qid)
        topic = _keyword_line(block[1], "TOPIC")
        prompt = block[2]
        hint = _keyword_line(block[-1], "HINT", rest_may_have_spaces=True)
        answer_text = _keyword_line(block[-2], "ANSWER")
        options = []
        for n, line in enumerate(block[3:-2], start=1):
            prefix = f"{n})"
            if not line.startswith(prefix):
                raise FormatError(
                    f"quiz {qid!r}: option line {n} must start with {prefix!r}")
            options.append(line[len(prefix):].strip())
        if len(options) < 2:
            raise FormatError(f"quiz {qid!r} needs at least two options")
        try:
            answer = int(answer_text)
        except ValueError:
            raise FormatError(f"quiz {qid!r}: ANSWER must be an integer") from None
        if not 1 <= answer <= len(options):
            raise FormatError(
                f"quiz {qid!r}: ANSWER {answer} is not an option index")
        questions.append(QuizQuestion(qid, topic, prompt,
                                      tuple(options), answer, hint))
    if not questions:
        raise FormatError("quiz bank has no questions")
    return questions


def _keyword_line(line: str, keyword: str, rest_may_have_spaces: bool = False) -> str:
    parts = line.split(None, 1)
    if len(parts) != 2 or parts[0] != keyword:
        raise FormatError(f"expected {keyword!r} line, got {line!r}")
    rest = parts[1].strip()
    if not rest_may_have_spaces and len(rest.split()) != 1:
        raise FormatError(f"{keyword!r} takes a single token, got {rest!r}")
    return rest


def _blocks(text: str) -> list[list[str]]:
    blocks: list[list[str]] = []
    current: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
        else:
            current.append(line)
    if current:
        blocks.append(current)
    return blocks
