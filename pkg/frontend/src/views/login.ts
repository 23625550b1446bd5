import type { ViewState } from "../state.js";
import { notice } from "./shared.js";

export function renderLogin(state: ViewState): string {
  return `<section class="card login">
  <h1>Sign in</h1>
  ${notice(state.notice)}
  <form data-action="login">
    <label>User id
      <input name="userid" type="email" autocomplete="username" required>
    </label>
    <label>Password
      <input name="password" type="password" autocomplete="current-password" required>
    </label>
    <button type="submit"${state.pending ? " disabled" : ""}>Sign in</button>
  </form>
</section>`;
}
