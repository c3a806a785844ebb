// Thin typed client for the game service. The fetch implementation is
// injectable so tests can stand in for the network.

import { MoveReply, SessionDescriptor, SessionRow } from './schema.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function errorDetail(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (body && typeof body.detail === 'string') {
      return body.detail;
    }
  } catch {
    // fall through to the generic message
  }
  return `service responded ${res.status}`;
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post(path: string, body: unknown): Promise<Response> {
    const res = await this.fetchImpl(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!res.ok) {
      throw new ServiceError(res.status, await errorDetail(res));
    }
    return res;
  }

  async createSession(n: number, w: string): Promise<SessionDescriptor> {
    const res = await this.post('/sessions', { n, w });
    return (await res.json()) as SessionDescriptor;
  }

  async postMove(
    id: string,
    side: 'left' | 'right',
    element: string,
    round: number,
  ): Promise<MoveReply> {
    const res = await this.post(`/sessions/${id}/moves`, { side, element, round });
    return (await res.json()) as MoveReply;
  }

  // Raw text on purpose: the transcript is canonical bytes and the board is
  // a projection of exactly this payload.
  async getTranscriptText(id: string): Promise<string> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions/${id}`);
    if (!res.ok) {
      throw new ServiceError(res.status, await errorDetail(res));
    }
    return res.text();
  }

  async listSessions(): Promise<SessionRow[]> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions`);
    if (!res.ok) {
      throw new ServiceError(res.status, await errorDetail(res));
    }
    return (await res.json()) as SessionRow[];
  }
}
