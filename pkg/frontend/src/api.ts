// Thin client for the studio's HTTP endpoints.

import type {
  CompileReply,
  ErrorBody,
  GraphDocument,
  SolveReply,
  ValidateLinkReply,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface Client {
  baseUrl: string;
  fetchFn: FetchLike;
}

export function createClient(baseUrl = "", fetchFn?: FetchLike): Client {
  return { baseUrl, fetchFn: fetchFn ?? ((input, init) => fetch(input, init)) };
}

async function post<T>(
  client: Client,
  path: string,
  payload: unknown,
  signal?: AbortSignal,
): Promise<T> {
  const resp = await client.fetchFn(client.baseUrl + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
    signal,
  });
  const data: unknown = await resp.json();
  if (!resp.ok) throw new ApiError(resp.status, data as ErrorBody);
  return data as T;
}

export function validateLink(
  client: Client,
  doc: GraphDocument,
  a: string,
  b: string,
  signal?: AbortSignal,
): Promise<ValidateLinkReply> {
  return post(client, "/api/validate-link", { graph: doc, a, b }, signal);
}

export function compileGraph(
  client: Client,
  doc: GraphDocument,
  signal?: AbortSignal,
): Promise<CompileReply> {
  return post(client, "/api/compile", { graph: doc }, signal);
}

export interface SolveOptions {
  time_limit_ms?: number;
  max_solutions?: number;
}

export function solveGraph(
  client: Client,
  doc: GraphDocument,
  opts: SolveOptions = {},
  signal?: AbortSignal,
): Promise<SolveReply> {
  return post(client, "/api/solve", { graph: doc, ...opts }, signal);
}

export async function health(client: Client): Promise<boolean> {
  try {
    const resp = await client.fetchFn(client.baseUrl + "/api/health");
    return resp.ok;
  } catch {
    return false;
  }
}
