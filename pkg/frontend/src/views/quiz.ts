import { currentQuestion, type ViewState } from "../state.js";
import { escapeAttr, escapeHtml, notice } from "./shared.js";

/**
 * Quiz runner. Open questions render live option buttons; after one wrong
 * answer the hint appears beneath the prompt with options re-enabled; after
 * a second wrong answer the recommended resource renders as a link and the
 * question locks (no option buttons at all). Correct answers confirm and
 * offer the next question.
 */
export function renderQuiz(state: ViewState): string {
  if (!state.quiz.sessionId) {
    return `<section class="card quiz">
  ${notice(state.notice)}
  <p>No quiz in progress.</p>
  <button data-action="start-quiz">Start quiz</button>
</section>`;
  }

  const entry = currentQuestion(state);
  if (!entry) {
    return `<section class="card quiz">${notice(state.notice)}<p>Quiz finished.</p></section>`;
  }

  const live = entry.phase === "open" || entry.phase === "hinted";
  const options = live
    ? entry.question.options
        .map((option, index) => {
          const value = index + 1;
          return `<button class="quiz-option" data-action="answer" data-option="${value}"${state.pending ? " disabled" : ""}>${escapeHtml(option)}</button>`;
        })
        .join("\n    ")
    : "";

  const hint =
    entry.phase === "hinted" && entry.hint
      ? `<aside class="hint">Hint: ${escapeHtml(entry.hint)}</aside>`
      : "";

  const outcome =
    entry.phase === "correct"
      ? `<p class="correct">Correct!</p>
  <button data-action="quiz-advance">Next question</button>`
      : entry.phase === "recommended"
        ? `<aside class="recommendation">
    <p>Have a look at this before trying the topic again:</p>
    <a class="resource-link" href="${escapeAttr(entry.path ?? "")}">${escapeHtml(entry.resource ?? "")}</a>
  </aside>
  <button data-action="quiz-advance">Next question</button>`
        : "";

  const position = `${state.quiz.current + 1} of ${state.quiz.questions.length}`;
  const attempt = live ? ` — attempt ${entry.attempts + 1} of 2` : "";
  return `<section class="card quiz" data-question-id="${escapeAttr(entry.question.id)}">
  <h1>Quiz</h1>
  ${notice(state.notice)}
  <p class="progress">Question ${position}${attempt}</p>
  <p class="prompt">${escapeHtml(entry.question.prompt)}</p>
  ${hint}
  <div class="options">
    ${options}
  </div>
  ${outcome}
</section>`;
}
