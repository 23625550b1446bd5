"""VARK survey scoring and learning-style classification.

Each survey question offers exactly four options, and the option position —
not its text — decides which style it counts toward: option 1 is Kinesthetic,
2 Visual, 3 ReadWrite, 4 Aural. A learner's style is the maximal count, with
ties broken in the fixed order Visual > Aural > ReadWrite > Kinesthetic.
"""

from dataclasses import dataclass

from .errors import EmptySurvey, FormatError, IndexOutOfRange, LengthMismatch

VISUAL = "Visual"
AURAL = "Aural"
READ_WRITE = "ReadWrite"
KINESTHETIC = "Kinesthetic"

STYLES = (VISUAL, AURAL, READ_WRITE, KINESTHETIC)

# option position -> style; fixed across all questions
INDEX_TO_STYLE = {1: KINESTHETIC, 2: VISUAL, 3: READ_WRITE, 4: AURAL}

OPTION_COUNT = 4


@dataclass(frozen=True)
class SurveyQuestion:
    id: str
    prompt: str
    options: tuple[str, str, str, str]


@dataclass(frozen=True)
class VarkScores:
    v: int
    a: int
    r: int
    k: int

    @property
    def total(self) -> int:
        return self.v + self.a + self.r + self.k


def load_questionnaire(text: str) -> list[SurveyQuestion]:
    """Parse the questionnaire document format.

    Blocks are separated by blank lines. Each block is a header line
    ``Q <id>``, one prompt line, then exactly four option lines
    ``1) ...`` through ``4) ...`` in order.
    """
    questions: list[SurveyQuestion] = []
    seen: set[str] = set()
    for block in _blocks(text):
        header = block[0]
        if not header.startswith("Q ") or len(header.split()) != 2:
            raise FormatError(f"bad question header: {header!r}")
        qid = header.split()[1]
        if qid in seen:
            raise FormatError(f"duplicate question id {qid!r}")
        seen.add(qid)
        if len(block) != 2 + OPTION_COUNT:
            raise FormatError(
                f"question {qid!r} must have one prompt line and "
                f"{OPTION_COUNT} options, got {len(block) - 1} lines")
        prompt = block[1]
        options = []
        for n, line in enumerate(block[2:], start=1):
            prefix = f"{n})"
            if not line.startswith(prefix):
                raise FormatError(
                    f"question {qid!r}: option line {n} must start with {prefix!r}")
            options.append(line[len(prefix):].strip())
        questions.append(SurveyQuestion(qid, prompt, tuple(options)))
    if not questions:
        raise FormatError("questionnaire has no questions")
    return questions


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


def score_survey(questions: list[SurveyQuestion], answers: list[int]) -> VarkScores:
    if len(answers) != len(questions):
        raise LengthMismatch(
            f"{len(questions)} questions but {len(answers)} answers")
    counts = {style: 0 for style in STYLES}
    for pos, answer in enumerate(answers, start=1):
        if not isinstance(answer, int) or answer not in INDEX_TO_STYLE:
            raise IndexOutOfRange(
                f"answer {pos}: option index must be 1..{OPTION_COUNT}, got {answer!r}")
        counts[INDEX_TO_STYLE[answer]] += 1
    return VarkScores(v=counts[VISUAL], a=counts[AURAL],
                      r=counts[READ_WRITE], k=counts[KINESTHETIC])


def classify(scores: VarkScores) -> str:
    """The style with the maximal count; ties go Visual > Aural > ReadWrite > Kinesthetic."""
    if scores.total == 0:
        raise EmptySurvey("no answered questions to classify")
    by_style = ((scores.v, VISUAL), (scores.a, AURAL),
                (scores.r, READ_WRITE), (scores.k, KINESTHETIC))
    best = max(count for count, _ in by_style)
    for count, style in by_style:
        if count == best:
            return style
    raise AssertionError("unreachable")
