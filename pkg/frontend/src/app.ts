/**
 * Browser glue: render loop, hash routing, and event delegation.
 *
 * All behavior lives in the controllers (state.ts); this file only reads
 * form inputs, dispatches to controllers, and re-renders. Buttons and forms
 * advertise their controller via a `data-action` attribute.
 */

import { LmsClient, type Role } from "./api.js";
import {
  addCourse,
  addUser,
  advance,
  answerCurrent,
  chooseOption,
  enroll,
  initialState,
  loadCourses,
  loadRoster,
  signIn,
  signOut,
  startQuiz,
  stepBack,
  stepForward,
  submitSurvey,
  type Route,
  type ViewState,
} from "./state.js";
import { renderAdmin } from "./views/admin.js";
import { renderCourses } from "./views/courses.js";
import { renderLogin } from "./views/login.js";
import { renderQuiz } from "./views/quiz.js";
import { renderSurvey } from "./views/survey.js";

const client = new LmsClient(window.location.origin.replace(/:\d+$/, ":8080"));
const state: ViewState = initialState();
const root = document.getElementById("app")!;

const VIEWS: Record<Route, (state: ViewState) => string> = {
  login: renderLogin,
  survey: renderSurvey,
  courses: renderCourses,
  quiz: renderQuiz,
  admin: renderAdmin,
};

function render(): void {
  if (!client.token && state.route !== "login") {
    state.route = "login"; // nothing but Login renders without a token
  }
  root.innerHTML = navigation() + VIEWS[state.route](state);
  window.location.hash = `#/${state.route}`;
}

function navigation(): string {
  if (!client.token) return "";
  const links = (["survey", "courses", "quiz", "admin"] as Route[])
    .map(
      (route) =>
        `<button data-action="nav" data-route="${route}"${route === state.route ? ' class="active"' : ""}>${route}</button>`,
    )
    .join("");
  return `<nav class="top">${links}<button data-action="logout">Sign out</button></nav>`;
}

async function act(action: string, dataset: DOMStringMap, form?: HTMLFormElement): Promise<void> {
  const fields = form ? new FormData(form) : null;
  const text = (name: string) => String(fields?.get(name) ?? "");
  switch (action) {
    case "login":
      await signIn(client, state, text("userid"), text("password"));
      break;
    case "logout":
      signOut(client, state);
      break;
    case "nav": {
      const route = dataset.route as Route;
      if (route === "courses") await loadCourses(client, state);
      else state.route = route;
      break;
    }
    case "survey-back":
      stepBack(state);
      break;
    case "survey-next":
      stepForward(state);
      break;
    case "survey-submit":
      await submitSurvey(client, state);
      break;
    case "go-courses":
      await loadCourses(client, state);
      break;
    case "enroll":
      await enroll(client, state, dataset.course ?? "");
      break;
    case "start-quiz":
      await startQuiz(client, state);
      break;
    case "answer":
      await answerCurrent(client, state, Number(dataset.option));
      break;
    case "quiz-advance":
      advance(state);
      break;
    case "add-user":
      await addUser(client, state, text("role") as Role, text("userid"), text("name"));
      break;
    case "add-course":
      await addCourse(client, state, text("id"), [text("parent")]);
      break;
    case "assign-teacher":
      try {
        await client.assignTeacher(text("course"), text("teacher"));
        state.notice = `Assigned ${text("teacher")} to ${text("course")}.`;
      } catch (error) {
        state.notice = String(error);
      }
      break;
    case "upload-resource":
      try {
        await client.uploadResource({
          id: text("id"),
          kind: text("kind"),
          path: text("path"),
          format: text("format"),
          topics: text("topics").split(/\s+/).filter(Boolean),
        });
        state.notice = `Uploaded ${text("id")}.`;
      } catch (error) {
        state.notice = String(error);
      }
      break;
    case "load-roster":
      await loadRoster(client, state, text("course"));
      break;
  }
  render();
}

document.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target || target instanceof HTMLFormElement) return;
  if (target.closest("form")?.dataset.action === target.dataset.action) return;
  void act(target.dataset.action!, target.dataset);
});

document.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  if (!form.dataset.action) return;
  event.preventDefault();
  void act(form.dataset.action, form.dataset, form);
});

document.addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.name === "option" && input.type === "radio") {
    chooseOption(state, Number(input.value));
    render();
  }
});

render();
