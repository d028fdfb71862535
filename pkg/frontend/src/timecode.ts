/** Millisecond time-codes in HH:MM:SS.mmm, matching the backend's citations. */

export function msToTimecode(ms: number): string {
  const totalSeconds = Math.floor(ms / 1000);
  const millis = ms % 1000;
  const hours = Math.floor(totalSeconds / 3600);
  const minutes = Math.floor((totalSeconds % 3600) / 60);
  const seconds = totalSeconds % 60;
  const pad = (n: number, width = 2) => String(n).padStart(width, "0");
  return `${pad(hours)}:${pad(minutes)}:${pad(seconds)}.${pad(millis, 3)}`;
}

/** Parse HH:MM:SS.mmm (the cutter dialog's editable fields) back to ms. */
export function timecodeToMs(text: string): number {
  const match = /^(\d{1,2}):(\d{2}):(\d{2})\.(\d{3})$/.exec(text.trim());
  if (!match) {
    throw new Error(`not a HH:MM:SS.mmm time-code: ${text}`);
  }
  const [, h, m, s, milli] = match;
  return ((Number(h) * 60 + Number(m)) * 60 + Number(s)) * 1000 + Number(milli);
}
