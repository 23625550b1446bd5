"""Ontology-backed learning management engine.

A typed in-memory ontology store with eager inverse materialization, a small
Manchester-style query language, VARK learning-style profiling, an adaptive
hint-then-recommend quiz engine, a role-gated catalog of users/courses/
resources, deterministic text persistence, and a token-authenticated REST
service tying it all together.
"""

from .catalog import Catalog, CourseRecord, ResourceRecord, UserAccount
from .dlquery import class_extension, evaluate, format_query, parse_query
from .ontology import Ontology
from .persistence import load_seed, parse, serialize
from .quiz import (
    QuizQuestion,
    QuizSession,
    load_quiz_bank,
    recommend_resource,
    session_report,
    start_session,
    submit_answer,
)
from .service import LmsService
from .vark import SurveyQuestion, VarkScores, classify, load_questionnaire, score_survey

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CourseRecord",
    "LmsService",
    "Ontology",
    "QuizQuestion",
    "QuizSession",
    "ResourceRecord",
    "SurveyQuestion",
    "UserAccount",
    "VarkScores",
    "__version__",
    "class_extension",
    "classify",
    "evaluate",
    "format_query",
    "load_questionnaire",
    "load_quiz_bank",
    "load_seed",
    "parse",
    "parse_query",
    "recommend_resource",
    "score_survey",
    "serialize",
    "session_report",
    "start_session",
    "submit_answer",
]
