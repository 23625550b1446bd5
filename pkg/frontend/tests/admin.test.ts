import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { LmsClient, type CreatedUser, type Exchange } from "../src/api.js";
import {
  addCourse,
  addUser,
  enroll,
  initialState,
  loadCourses,
  loadRoster,
  signIn,
  type ViewState,
} from "../src/state.js";
import { renderAdmin } from "../src/views/admin.js";
import { renderCourses } from "../src/views/courses.js";
import { ADMIN, startService, STUDENT, type TestService } from "./harness.js";

let service: TestService;

beforeAll(async () => {
  service = await startService();
}, 30_000);

afterAll(async () => {
  await service.stop();
});

async function signedIn(userid: string): Promise<{ client: LmsClient; state: ViewState }> {
  const client = new LmsClient(service.baseUrl);
  const state = initialState();
  await signIn(client, state, userid, service.passwords.get(userid)!);
  return { client, state };
}

describe("management panels", () => {
  it("lands staff on the panels with the course selects already filled", async () => {
    const { state } = await signedIn(ADMIN);
    expect(state.route).toBe("admin");
    const html = renderAdmin(state);
    expect(html).toContain('<form data-action="add-course"');
    expect(html).toContain('<option value="OperatingSystem">');
  });

  it("shows a freshly added course in every course list without a reload", async () => {
    const { client, state } = await signedIn(ADMIN);
    const before = state.courses.length;

    await addCourse(client, state, "MemoryManagement", ["OperatingSystem"]);
    expect(state.notice).toBe("Course MemoryManagement added.");
    expect(state.courses).toHaveLength(before + 1);
    expect(renderAdmin(state)).toContain('<option value="MemoryManagement">');

    state.route = "courses";
    expect(renderCourses(state)).toContain('data-course="MemoryManagement"');
  });

  it("lets a student enroll in the new course and marks it on re-login", async () => {
    const { client, state } = await signedIn(STUDENT);
    await loadCourses(client, state);
    expect(renderCourses(state)).toContain(
      'data-action="enroll" data-course="MemoryManagementCourse"',
    );

    await enroll(client, state, "MemoryManagementCourse");
    expect(state.enrolled).toContain("MemoryManagementCourse");

    // a hard refresh rebuilds the same picture from API reads alone
    const fresh = await signedIn(STUDENT);
    await loadCourses(fresh.client, fresh.state);
    expect(fresh.state.enrolled).toContain("MemoryManagementCourse");
    const html = renderCourses(fresh.state);
    expect(html.match(/<span class="enrolled">enrolled<\/span>/g)!.length).toBeGreaterThanOrEqual(2);
  });

  it("reports the generated password when a user is created", async () => {
    const { client, state } = await signedIn(ADMIN);
    const exchanges: Exchange[] = [];
    client.onExchange = (exchange) => exchanges.push(exchange);

    const password = await addUser(client, state, "Student", "new.kid@example.com", "New Kid");
    const created = exchanges[0]!.response as CreatedUser;
    expect(password).toBe(created.initialPassword);
    expect(state.notice).toContain(created.initialPassword);

    // the reported password actually works
    const login = new LmsClient(service.baseUrl);
    const who = await login.login("new.kid@example.com", password!);
    expect(who.role).toBe("Student");
  });

  it("lists the enrolled students of a course", async () => {
    const { client, state } = await signedIn(ADMIN);
    await loadRoster(client, state, "OperatingSystemCourse");
    expect(state.roster?.students).toContainEqual({
      id: "abcStudent",
      name: "ABC Student",
      userid: "abc05@gmail.com",
    });
    const html = renderAdmin(state);
    expect(html).toContain("<caption>Enrolled in OperatingSystemCourse</caption>");
    expect(html).toContain("<td>ABC Student</td>");
  });

  it("offers no panels to a student and surfaces role errors as notices", async () => {
    const { client, state } = await signedIn(STUDENT);
    state.route = "admin";
    const html = renderAdmin(state);
    expect(html).toContain("Management tools are not available for your role.");
    expect(html).not.toContain("<form");

    await loadRoster(client, state, "OperatingSystemCourse");
    expect(state.notice).toMatch(/^Not available for your role: /);
    expect(state.roster).toBeNull();
  });
});
