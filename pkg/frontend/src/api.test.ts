import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "./api.js";
import type { FetchLike } from "./api.js";
import type { SessionSummary } from "./types.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function recorder(...responses: Array<Response | Error>): { fetch: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const queue = [...responses];
  const fetch: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const next = queue.shift();
    if (!next) {
      throw new Error("no canned response left");
    }
    if (next instanceof Error) {
      throw next;
    }
    return next;
  };
  return { fetch, calls };
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

const SUMMARY: SessionSummary = {
  session_id: "sess",
  round: 2,
  pending: ["s03"],
  labels_accepted: 9,
  candidates_remaining: 3,
  thresholds: { unsupervised: 1.2, fitted: 0.65, fitted_on: 9 },
  query_set_f1: 1.0,
};

describe("request shapes", () => {
  it("gets the session with a trimmed base url", async () => {
    const { fetch, calls } = recorder(json(SUMMARY));
    const client = new ApiClient("http://host:8000///", fetch);
    const summary = await client.getSession();
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://host:8000/session");
    expect(calls[0].init?.method).toBeUndefined();
    expect(summary).toEqual(SUMMARY);
  });

  it("posts strategy and budget to start a round", async () => {
    const { fetch, calls } = recorder(json({ round: 0, pending: ["s12", "s11"] }));
    const client = new ApiClient("http://host:8000", fetch);
    const round = await client.startRound("tqs", 2);
    expect(calls[0].url).toBe("http://host:8000/session/rounds");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ strategy: "tqs", budget: 2 });
    expect(round.pending).toEqual(["s12", "s11"]);
  });

  it("url-encodes the query id", async () => {
    const { fetch, calls } = recorder(json({}));
    const client = new ApiClient("http://host:8000", fetch);
    await client.getQuery("a b/c");
    expect(calls[0].url).toBe("http://host:8000/queries/a%20b%2Fc");
  });

  it("posts id and value to submit a label", async () => {
    const { fetch, calls } = recorder(json(SUMMARY));
    const client = new ApiClient("http://host:8000", fetch);
    await client.submitLabel("s03", "anomalous");
    expect(calls[0].url).toBe("http://host:8000/labels");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ id: "s03", value: "anomalous" });
  });

  it("gets the report", async () => {
    const { fetch, calls } = recorder(json({ session_id: "sess", rounds: 1, labels: 5 }));
    const client = new ApiClient("http://host:8000", fetch);
    await client.getReport();
    expect(calls[0].url).toBe("http://host:8000/report");
  });
});

describe("error mapping", () => {
  it("surfaces the server's code and message", async () => {
    const { fetch } = recorder(json({ code: "conflict", message: "round in progress" }, 409));
    const client = new ApiClient("http://host:8000", fetch);
    const failure = client.getSession();
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({
      code: "conflict",
      message: "round in progress",
      status: 409,
    });
  });

  it("falls back to the status text when the body is not json", async () => {
    const { fetch } = recorder(
      new Response("<html>boom</html>", { status: 500, statusText: "Internal Server Error" }),
    );
    const client = new ApiClient("http://host:8000", fetch);
    await expect(client.getSession()).rejects.toMatchObject({
      code: "error",
      message: "Internal Server Error",
      status: 500,
    });
  });

  it("maps a fetch rejection to a network error", async () => {
    const { fetch } = recorder(new TypeError("fetch failed"));
    const client = new ApiClient("http://host:8000", fetch);
    await expect(client.getSession()).rejects.toMatchObject({
      code: "network",
      message: "fetch failed",
      status: 0,
    });
  });
});
