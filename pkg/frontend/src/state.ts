/**
 * View state and the controllers that project server responses into it.
 *
 * Controllers are the only writers. Each one calls the API, then replaces
 * fields with what the server said — the client never computes scores,
 * styles, or quiz verdicts itself, and a hard refresh rebuilds every view
 * from API reads alone.
 */

import {
  ApiError,
  type BankQuestion,
  type CourseInfo,
  type LmsClient,
  type Role,
  type ScoreVector,
  type StudentEntry,
  type SurveyQuestion,
  type SurveyResult,
} from "./api.js";

export type Route = "login" | "survey" | "courses" | "quiz" | "admin";

export interface SurveyState {
  questions: SurveyQuestion[];
  step: number;
  answers: (number | null)[];
  result: SurveyResult | null;
}

export type QuestionPhase = "open" | "hinted" | "correct" | "recommended";

export interface QuizQuestionState {
  question: BankQuestion;
  phase: QuestionPhase;
  attempts: number; // mirrors the server: 0, 1, or 2 — never more
  hint: string | null;
  resource: string | null;
  path: string | null;
}

export interface QuizState {
  sessionId: string | null;
  questions: QuizQuestionState[];
  current: number;
}

export interface ViewState {
  route: Route;
  role: Role | null;
  individual: string | null;
  profile: { style: string | null; scores: ScoreVector | null };
  survey: SurveyState;
  quiz: QuizState;
  courses: CourseInfo[];
  enrolled: string[]; // course individuals the signed-in student pursues
  roster: { course: string; students: StudentEntry[] } | null;
  notice: string | null;
  pending: boolean; // at most one in-flight mutating request
}

export function initialState(): ViewState {
  return {
    route: "login",
    role: null,
    individual: null,
    profile: { style: null, scores: null },
    survey: { questions: [], step: 0, answers: [], result: null },
    quiz: { sessionId: null, questions: [], current: 0 },
    courses: [],
    enrolled: [],
    roster: null,
    notice: null,
    pending: false,
  };
}

// --- session -----------------------------------------------------------------

export async function signIn(
  client: LmsClient,
  state: ViewState,
  userid: string,
  password: string,
): Promise<void> {
  state.notice = null;
  try {
    const session = await client.login(userid, password);
    state.role = session.role;
    state.individual = session.individual;
    state.route = session.role === "Student" ? "survey" : "admin";
    if (session.role === "Student") {
      await loadSurvey(client, state);
    } else {
      state.courses = await client.courses(); // fills the management selects
    }
  } catch (error) {
    fail(state, error);
  }
}

export function signOut(client: LmsClient, state: ViewState): void {
  client.logout();
  const fresh = initialState();
  Object.assign(state, fresh);
}

// --- survey wizard ---------------------------------------------------------------

export async function loadSurvey(
  client: LmsClient,
  state: ViewState,
): Promise<void> {
  // keep earlier answers if the question list is unchanged (e.g. re-login)
  const questions = await client.survey();
  const sameShape = state.survey.questions.length === questions.length;
  state.survey = {
    questions,
    step: sameShape ? state.survey.step : 0,
    answers: sameShape
      ? state.survey.answers
      : questions.map(() => null),
    result: null,
  };
}

export function chooseOption(state: ViewState, option: number): void {
  state.survey.answers[state.survey.step] = option;
}

export function stepBack(state: ViewState): void {
  state.survey.step = Math.max(0, state.survey.step - 1);
}

export function stepForward(state: ViewState): void {
  const last = state.survey.questions.length - 1;
  state.survey.step = Math.min(last, state.survey.step + 1);
}

export function surveyComplete(state: ViewState): boolean {
  return (
    state.survey.answers.length > 0 &&
    state.survey.answers.every((answer) => answer !== null)
  );
}

export async function submitSurvey(
  client: LmsClient,
  state: ViewState,
): Promise<void> {
  if (!surveyComplete(state) || state.pending) return;
  state.pending = true;
  try {
    const result = await client.submitSurvey(
      state.survey.answers as number[],
    );
    state.survey.result = result;
    state.profile = { style: result.style, scores: result.scores };
  } catch (error) {
    // an expired token sends the learner back to login; answers survive
    if (error instanceof ApiError && error.status === 401) {
      state.route = "login";
      state.notice = "Session expired — sign in again to continue.";
    } else {
      fail(state, error);
    }
  } finally {
    state.pending = false;
  }
}

// --- courses ------------------------------------------------------------------

export async function loadCourses(
  client: LmsClient,
  state: ViewState,
): Promise<void> {
  state.courses = await client.courses();
  if (state.role === "Student" && state.individual) {
    state.enrolled = await client.query(
      `enrolledAt value ${state.individual}`,
    );
  }
  state.route = "courses";
}

export async function enroll(
  client: LmsClient,
  state: ViewState,
  course: string,
): Promise<void> {
  if (state.pending) return;
  state.pending = true;
  try {
    await client.enroll(course);
    await loadCourses(client, state);
  } catch (error) {
    fail(state, error);
  } finally {
    state.pending = false;
  }
}

// --- quiz ----------------------------------------------------------------------

export async function startQuiz(
  client: LmsClient,
  state: ViewState,
  questionIds?: string[],
): Promise<void> {
  const bank = await client.quizBank();
  const chosen =
    questionIds === undefined
      ? bank
      : bank.filter((question) => questionIds.includes(question.id));
  try {
    const sessionId = await client.startQuiz(chosen.map((q) => q.id));
    state.quiz = {
      sessionId,
      questions: chosen.map((question) => ({
        question,
        phase: "open",
        attempts: 0,
        hint: null,
        resource: null,
        path: null,
      })),
      current: 0,
    };
    state.route = "quiz";
  } catch (error) {
    fail(state, error);
  }
}

export function currentQuestion(state: ViewState): QuizQuestionState | null {
  return state.quiz.questions[state.quiz.current] ?? null;
}

export async function answerCurrent(
  client: LmsClient,
  state: ViewState,
  option: number,
): Promise<void> {
  const entry = currentQuestion(state);
  if (!entry || !state.quiz.sessionId || state.pending) return;
  if (entry.phase === "correct" || entry.phase === "recommended") {
    return; // locked: the UI renders no live options for resolved questions
  }
  state.pending = true;
  try {
    const outcome = await client.answerQuestion(
      state.quiz.sessionId,
      entry.question.id,
      option,
    );
    entry.attempts += 1;
    if (outcome.outcome === "correct") {
      entry.phase = "correct";
    } else if (outcome.outcome === "hint") {
      entry.phase = "hinted";
      entry.hint = outcome.hint;
    } else {
      entry.phase = "recommended";
      entry.resource = outcome.resource;
      entry.path = outcome.path;
    }
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      // stale session: back to the start screen
      state.quiz = { sessionId: null, questions: [], current: 0 };
    } else {
      fail(state, error);
    }
  } finally {
    state.pending = false;
  }
}

export function advance(state: ViewState): void {
  // one past the last question is the "finished" screen
  if (state.quiz.current < state.quiz.questions.length) {
    state.quiz.current += 1;
  }
}

// --- management panels ---------------------------------------------------------

export async function addCourse(
  client: LmsClient,
  state: ViewState,
  id: string,
  parents: string[],
): Promise<void> {
  if (state.pending) return;
  state.pending = true;
  try {
    await client.addCourse(id, parents);
    state.courses = await client.courses(); // appears without a reload
    state.notice = `Course ${id} added.`;
  } catch (error) {
    fail(state, error);
  } finally {
    state.pending = false;
  }
}

export async function addUser(
  client: LmsClient,
  state: ViewState,
  role: Role,
  userid: string,
  name: string,
): Promise<string | null> {
  if (state.pending) return null;
  state.pending = true;
  try {
    const created = await client.addUser(role, userid, name);
    state.notice =
      `Created ${created.id} (${created.role}); ` +
      `initial password: ${created.initialPassword}`;
    return created.initialPassword;
  } catch (error) {
    fail(state, error);
    return null;
  } finally {
    state.pending = false;
  }
}

export async function loadRoster(
  client: LmsClient,
  state: ViewState,
  course: string,
): Promise<void> {
  try {
    state.roster = { course, students: await client.students(course) };
  } catch (error) {
    fail(state, error);
  }
}

// --- shared failure path ----------------------------------------------------------

function fail(state: ViewState, error: unknown): void {
  if (error instanceof ApiError) {
    state.notice =
      error.status === 403
        ? `Not available for your role: ${error.message}`
        : `${error.code}: ${error.message}`;
  } else {
    state.notice = `Network error: ${String(error)}`;
  }
}
