import type { ViewState } from "../state.js";
import { escapeAttr, escapeHtml, notice } from "./shared.js";

export function renderCourses(state: ViewState): string {
  const rows = state.courses
    .map((course) => {
      const enrolled = state.enrolled.includes(course.courseId);
      const action =
        state.role === "Student"
          ? enrolled
            ? `<span class="enrolled">enrolled</span>`
            : `<button data-action="enroll" data-course="${escapeAttr(course.courseId)}"${state.pending ? " disabled" : ""}>Enroll</button>`
          : "";
      return `<li data-course="${escapeAttr(course.classId)}">
      <span class="course-name">${escapeHtml(course.classId)}</span> ${action}
    </li>`;
    })
    .join("\n    ");

  return `<section class="card courses">
  <h1>Courses</h1>
  ${notice(state.notice)}
  <ul class="course-list">
    ${rows}
  </ul>
  ${state.role === "Student" ? `<button data-action="start-quiz">Take a quiz</button>` : ""}
</section>`;
}
