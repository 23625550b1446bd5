import type { ViewState } from "../state.js";
import { escapeAttr, escapeHtml, notice } from "./shared.js";

const STAFF = new Set(["Admin", "Teacher", "Manager"]);

/**
 * Management panels: add user, add course, assign teacher, upload resource,
 * and the enrolled-student listing. Non-staff roles get a notice and no
 * forms; role errors from the server surface the same way.
 */
export function renderAdmin(state: ViewState): string {
  if (!state.role || !STAFF.has(state.role)) {
    return `<section class="card admin">
  <p class="notice" role="alert">Management tools are not available for your role.</p>
</section>`;
  }

  const courseOptions = state.courses
    .map(
      (course) =>
        `<option value="${escapeAttr(course.classId)}">${escapeHtml(course.classId)}</option>`,
    )
    .join("");

  const roster = state.roster
    ? `<table class="roster">
    <caption>Enrolled in ${escapeHtml(state.roster.course)}</caption>
    <tr><th>Id</th><th>Name</th><th>User id</th></tr>
    ${state.roster.students
      .map(
        (student) =>
          `<tr><td>${escapeHtml(student.id)}</td><td>${escapeHtml(student.name)}</td><td>${escapeHtml(student.userid)}</td></tr>`,
      )
      .join("\n    ")}
  </table>`
    : "";

  return `<section class="card admin">
  <h1>Management</h1>
  ${notice(state.notice)}

  <form data-action="add-user" class="panel">
    <h2>Add user</h2>
    <label>Role
      <select name="role">
        <option>Student</option><option>Teacher</option>
        <option>Manager</option><option>Admin</option>
      </select>
    </label>
    <label>User id <input name="userid" type="email" required></label>
    <label>Name <input name="name" required></label>
    <button type="submit"${state.pending ? " disabled" : ""}>Create</button>
  </form>

  <form data-action="add-course" class="panel">
    <h2>Add course</h2>
    <label>Course id <input name="id" required></label>
    <label>Parent
      <select name="parent">${courseOptions}</select>
    </label>
    <button type="submit"${state.pending ? " disabled" : ""}>Add course</button>
  </form>

  <form data-action="assign-teacher" class="panel">
    <h2>Assign teacher</h2>
    <label>Teacher id <input name="teacher" required></label>
    <label>Course
      <select name="course">${courseOptions}</select>
    </label>
    <button type="submit"${state.pending ? " disabled" : ""}>Assign</button>
  </form>

  <form data-action="upload-resource" class="panel">
    <h2>Upload resource</h2>
    <label>Id <input name="id" required></label>
    <label>Kind
      <select name="kind">
        <option>LectureNotes</option><option>Video</option>
        <option>Book</option><option>Audio</option><option>Exercise</option>
      </select>
    </label>
    <label>Format
      <select name="format">
        <option>lecture-notes</option><option>video</option>
        <option>book</option><option>audio</option>
        <option>exercise</option><option>lab</option>
      </select>
    </label>
    <label>Path <input name="path" required></label>
    <label>Topics (space-separated) <input name="topics" required></label>
    <button type="submit"${state.pending ? " disabled" : ""}>Upload</button>
  </form>

  <form data-action="load-roster" class="panel">
    <h2>Enrolled students</h2>
    <label>Course
      <select name="course">${courseOptions}</select>
    </label>
    <button type="submit">Show</button>
  </form>
  ${roster}

  <h2>Courses</h2>
  <ul class="course-list">
    ${state.courses
      .map(
        (course) =>
          `<li data-course="${escapeAttr(course.classId)}">${escapeHtml(course.classId)}</li>`,
      )
      .join("\n    ")}
  </ul>
</section>`;
}
