import { surveyComplete, type ViewState } from "../state.js";
import { escapeAttr, escapeHtml, notice } from "./shared.js";

/**
 * One question per step, exactly four radio options, Back/Next navigation,
 * and a Submit button that stays disabled until every step is answered.
 * The result page shows the server's score vector and style verbatim.
 */
export function renderSurvey(state: ViewState): string {
  const { survey } = state;
  if (survey.result) {
    return renderResult(state);
  }
  if (survey.questions.length === 0) {
    return `<section class="card">${notice(state.notice)}<p>Loading survey…</p></section>`;
  }

  const question = survey.questions[survey.step]!;
  const chosen = survey.answers[survey.step] ?? null;
  const options = question.options
    .map((option, index) => {
      const value = index + 1;
      const checked = chosen === value ? " checked" : "";
      return `<label class="option">
      <input type="radio" name="option" value="${value}"${checked}>
      <span>${escapeHtml(option)}</span>
    </label>`;
    })
    .join("\n    ");

  const last = survey.step === survey.questions.length - 1;
  const submitDisabled = !surveyComplete(state) || state.pending;
  return `<section class="card survey" data-question-id="${escapeAttr(question.id)}">
  <h1>Learning-style survey</h1>
  ${notice(state.notice)}
  <p class="progress">Question ${survey.step + 1} of ${survey.questions.length}</p>
  <fieldset>
    <legend>${escapeHtml(question.prompt)}</legend>
    ${options}
  </fieldset>
  <nav class="wizard-nav">
    <button data-action="survey-back"${survey.step === 0 ? " disabled" : ""}>Back</button>
    ${
      last
        ? `<button data-action="survey-submit"${submitDisabled ? " disabled" : ""}>Submit</button>`
        : `<button data-action="survey-next"${chosen === null ? " disabled" : ""}>Next</button>`
    }
  </nav>
</section>`;
}

function renderResult(state: ViewState): string {
  const result = state.survey.result!;
  const { scores } = result;
  return `<section class="card survey-result">
  <h1>Your learning style</h1>
  <p class="style-badge">${escapeHtml(result.style)}</p>
  <table class="scores">
    <tr><th>Visual</th><th>Aural</th><th>Read/Write</th><th>Kinesthetic</th></tr>
    <tr><td>${scores.v}</td><td>${scores.a}</td><td>${scores.r}</td><td>${scores.k}</td></tr>
  </table>
  <button data-action="go-courses">Browse courses</button>
</section>`;
}
