/**
 * Typed client for the ontolms REST service.
 *
 * Every method maps to exactly one endpoint; nothing is computed locally.
 * An optional `onExchange` hook records request/response pairs so tests can
 * assert that rendered results are the server's answers verbatim.
 */

export type Role = "Admin" | "Teacher" | "Student" | "Manager";

export interface LoginResponse {
  token: string;
  role: Role;
  individual: string;
}

export interface SurveyQuestion {
  id: string;
  prompt: string;
  options: string[];
}

export interface ScoreVector {
  v: number;
  a: number;
  r: number;
  k: number;
}

export interface SurveyResult {
  scores: ScoreVector;
  style: string;
}

export interface CourseInfo {
  classId: string;
  courseId: string;
}

export interface CreatedUser {
  id: string;
  role: Role;
  initialPassword: string;
}

export interface StudentEntry {
  id: string;
  name: string;
  userid: string;
}

export interface ResourceInfo {
  id: string;
  kind: string;
  path: string;
  format: string;
  uploader: string | null;
}

export interface BankQuestion {
  id: string;
  topic: string;
  prompt: string;
  options: string[];
}

export type AnswerOutcome =
  | { outcome: "correct" }
  | { outcome: "hint"; hint: string }
  | { outcome: "recommendation"; resource: string; path: string };

export interface Exchange {
  method: string;
  path: string;
  status: number;
  request: unknown;
  response: unknown;
}

/** An error body from the service: `{error, detail}` plus the HTTP status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export class LmsClient {
  token: string | null = null;
  onExchange: ((exchange: Exchange) => void) | null = null;

  constructor(readonly baseUrl: string) {}

  async login(userid: string, password: string): Promise<LoginResponse> {
    const body = await this.request<LoginResponse>("POST", "/login", {
      userid,
      password,
    });
    this.token = body.token;
    return body;
  }

  logout(): void {
    this.token = null;
  }

  async health(): Promise<{ status: string; axioms: number }> {
    return this.request("GET", "/health");
  }

  async survey(): Promise<SurveyQuestion[]> {
    const body = await this.request<{ questions: SurveyQuestion[] }>(
      "GET",
      "/survey",
    );
    return body.questions;
  }

  async submitSurvey(answers: number[]): Promise<SurveyResult> {
    return this.request("POST", "/survey", { answers });
  }

  async courses(): Promise<CourseInfo[]> {
    const body = await this.request<{ courses: CourseInfo[] }>(
      "GET",
      "/courses",
    );
    return body.courses;
  }

  async addCourse(id: string, parents: string[]): Promise<CourseInfo> {
    return this.request("POST", "/courses", { id, parents });
  }

  async deleteCourse(id: string): Promise<void> {
    await this.request("DELETE", `/courses/${encodeURIComponent(id)}`);
  }

  async enroll(course: string): Promise<void> {
    await this.request(
      "POST",
      `/courses/${encodeURIComponent(course)}/enroll`,
      {},
    );
  }

  async assignTeacher(course: string, teacher: string): Promise<void> {
    await this.request(
      "POST",
      `/courses/${encodeURIComponent(course)}/teacher`,
      { teacher },
    );
  }

  async students(course: string): Promise<StudentEntry[]> {
    const body = await this.request<{ students: StudentEntry[] }>(
      "GET",
      `/courses/${encodeURIComponent(course)}/students`,
    );
    return body.students;
  }

  async addUser(role: Role, userid: string, name: string): Promise<CreatedUser> {
    return this.request("POST", "/users", { role, userid, name });
  }

  async deleteUser(id: string): Promise<void> {
    await this.request("DELETE", `/users/${encodeURIComponent(id)}`);
  }

  async uploadResource(resource: {
    id: string;
    kind: string;
    path: string;
    format: string;
    topics: string[];
  }): Promise<ResourceInfo> {
    return this.request("POST", "/resources", resource);
  }

  async learnerResources(
    learner: string,
    course: string,
  ): Promise<ResourceInfo[]> {
    const body = await this.request<{ resources: ResourceInfo[] }>(
      "GET",
      `/learners/${encodeURIComponent(learner)}/resources` +
        `?course=${encodeURIComponent(course)}`,
    );
    return body.resources;
  }

  async quizBank(): Promise<BankQuestion[]> {
    const body = await this.request<{ questions: BankQuestion[] }>(
      "GET",
      "/quiz/bank",
    );
    return body.questions;
  }

  async startQuiz(questions: string[]): Promise<string> {
    const body = await this.request<{ sessionId: string }>("POST", "/quiz", {
      questions,
    });
    return body.sessionId;
  }

  async answerQuestion(
    sessionId: string,
    question: string,
    answer: number,
  ): Promise<AnswerOutcome> {
    return this.request(
      "POST",
      `/quiz/${encodeURIComponent(sessionId)}/answer`,
      { question, answer },
    );
  }

  async query(dl: string): Promise<string[]> {
    const body = await this.request<{ individuals: string[] }>(
      "GET",
      `/query?dl=${encodeURIComponent(dl)}`,
    );
    return body.individuals;
  }

  async exportDocument(): Promise<string> {
    return this.request("GET", "/export");
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;

    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const contentType = response.headers.get("content-type") ?? "";
    const payload: unknown = contentType.includes("application/json")
      ? JSON.parse(text)
      : text;

    this.onExchange?.({
      method,
      path,
      status: response.status,
      request: body,
      response: payload,
    });

    if (!response.ok) {
      const err = payload as { error?: string; detail?: string };
      throw new ApiError(
        response.status,
        err.error ?? "UnknownError",
        err.detail ?? text,
      );
    }
    return payload as T;
  }
}
