/**
 * Spawns a real ontolms service for integration tests.
 *
 * Each harness gets a fresh temp directory: the seed taxonomy and a
 * credential file are written by `ontolms seed`, then `ontolms serve`
 * runs on an OS-assigned port until stop() sends it SIGINT.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface TestService {
  baseUrl: string;
  /** userid -> password for the three seeded accounts. */
  passwords: Map<string, string>;
  stop(): Promise<void>;
}

export const ADMIN = "admin@lms.local";
export const TEACHER = "xyz04@gmail.com";
export const STUDENT = "abc05@gmail.com";

export async function startService(): Promise<TestService> {
  const dir = mkdtempSync(join(tmpdir(), "portal-test-"));
  const ontology = join(dir, "seed.onto");
  const credentials = join(dir, "credentials.txt");

  const seeded = spawnSync(
    "python3",
    ["-m", "ontolms.cli", "seed", "--out", ontology, "--credentials-out", credentials],
    { encoding: "utf-8" },
  );
  if (seeded.status !== 0) {
    throw new Error(`seed failed: ${seeded.stderr}`);
  }
  const passwords = new Map<string, string>();
  for (const line of seeded.stdout.split("\n")) {
    const match = line.match(/^(\S+@\S+)\s+(\S+)$/);
    if (match) passwords.set(match[1]!, match[2]!);
  }
  if (passwords.size !== 3) {
    throw new Error(`expected 3 seeded passwords, got: ${seeded.stdout}`);
  }

  const child = spawn(
    "python3",
    ["-m", "ontolms.cli", "serve", "--ontology", ontology, "--credentials", credentials, "--port", "0"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  const baseUrl = await new Promise<string>((resolve, reject) => {
    let transcript = "";
    const timer = setTimeout(
      () => reject(new Error(`service did not report a port:\n${transcript}`)),
      15_000,
    );
    const scan = (chunk: Buffer) => {
      transcript += chunk.toString();
      const match = transcript.match(/serving on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]!);
      }
    };
    child.stdout!.on("data", scan);
    child.stderr!.on("data", (chunk: Buffer) => {
      transcript += chunk.toString();
    });
    child.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`serve exited with ${code}:\n${transcript}`));
    });
  });

  return {
    baseUrl,
    passwords,
    stop: () => shutdown(child, dir),
  };
}

function shutdown(child: ChildProcess, dir: string): Promise<void> {
  return new Promise((resolve) => {
    child.once("exit", () => {
      rmSync(dir, { recursive: true, force: true });
      resolve();
    });
    child.kill("SIGINT");
    // a stuck server should not hang the suite
    setTimeout(() => child.kill("SIGKILL"), 5_000).unref();
  });
}
