/**
 * Entity-marker insertion for relation classification.
 *
 * Training sentences get `[SUBJ] .. [\SUBJ]` and `[OBJ] .. [\OBJ]`
 * wrapped around the exact mention offsets. Questions are marked from
 * endpoint descriptors: a known surface form is located in the text,
 * while the unknown (answer) endpoint is marked at the question's
 * first interrogative word.
 */

export interface Span {
  start: number;
  end: number;
}

export type EndpointDescriptor =
  | { surface: string }
  | { start: number; end: number }
  | { unknown: true };

export class MarkingError extends Error {}

export const SUBJ_OPEN = "[SUBJ]";
export const SUBJ_CLOSE = "[\\SUBJ]";
export const OBJ_OPEN = "[OBJ]";
export const OBJ_CLOSE = "[\\OBJ]";

const INTERROGATIVES = ["who", "what", "where", "when", "which", "whom"];

function spansOverlap(a: Span, b: Span): boolean {
  return a.start < b.end && b.start < a.end;
}

function checkSpan(text: string, span: Span, role: string): void {
  if (span.start < 0 || span.end > text.length || span.start >= span.end) {
    throw new MarkingError(`${role} span [${span.start}, ${span.end}) out of bounds`);
  }
}

/** Wrap both spans with markers at their exact character offsets. */
export function markSentence(text: string, subj: Span, obj: Span): string {
  checkSpan(text, subj, "subject");
  checkSpan(text, obj, "object");
  if (spansOverlap(subj, obj)) {
    throw new MarkingError(
      `overlapping spans: subject [${subj.start}, ${subj.end}) and object [${obj.start}, ${obj.end})`,
    );
  }
  const pieces: Array<{ span: Span; open: string; close: string }> = [
    { span: subj, open: SUBJ_OPEN, close: SUBJ_CLOSE },
    { span: obj, open: OBJ_OPEN, close: OBJ_CLOSE },
  ].sort((a, b) => a.span.start - b.span.start);

  const [first, second] = pieces;
  return (
    text.slice(0, first.span.start) +
    `${first.open} ` + text.slice(first.span.start, first.span.end) + ` ${first.close}` +
    text.slice(first.span.end, second.span.start) +
    `${second.open} ` + text.slice(second.span.start, second.span.end) + ` ${second.close}` +
    text.slice(second.span.end)
  );
}

/** Remove every marker token (with its padding space), restoring the text. */
export function stripMarkers(marked: string): string {
  return marked
    .replaceAll(`${SUBJ_OPEN} `, "")
    .replaceAll(` ${SUBJ_CLOSE}`, "")
    .replaceAll(`${OBJ_OPEN} `, "")
    .replaceAll(` ${OBJ_CLOSE}`, "");
}

/** First whole-word occurrence of an interrogative, if any. */
export function findInterrogative(question: string): Span | null {
  const re = /[A-Za-z]+/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(question)) !== null) {
    if (INTERROGATIVES.includes(m[0].toLowerCase())) {
      return { start: m.index, end: m.index + m[0].length };
    }
  }
  return null;
}

function locateSurface(question: string, surface: string, role: string): Span {
  const idx = question.toLowerCase().indexOf(surface.toLowerCase());
  if (idx < 0) {
    throw new MarkingError(`${role} surface ${JSON.stringify(surface)} not found in question`);
  }
  return { start: idx, end: idx + surface.length };
}

function resolveEndpoint(question: string, desc: EndpointDescriptor, role: string): Span {
  if ("unknown" in desc && desc.unknown) {
    const span = findInterrogative(question);
    if (span === null) {
      throw new MarkingError("unknown endpoint but the question has no interrogative word");
    }
    return span;
  }
  if ("surface" in desc) {
    return locateSurface(question, desc.surface, role);
  }
  if ("start" in desc && "end" in desc) {
    checkSpan(question, desc, role);
    return { start: desc.start, end: desc.end };
  }
  throw new MarkingError(`malformed ${role} endpoint descriptor`);
}

/**
 * Mark a question for inference. Markers are padded so they stand as
 * separate tokens even against punctuation (`.. [\SUBJ] ?`).
 */
export function markQuestion(
  question: string,
  subj: EndpointDescriptor,
  obj: EndpointDescriptor,
): string {
  const subjSpan = resolveEndpoint(question, subj, "subject");
  const objSpan = resolveEndpoint(question, obj, "object");
  if (spansOverlap(subjSpan, objSpan)) {
    throw new MarkingError("subject and object marks overlap in the question");
  }
  const pieces = [
    { span: subjSpan, open: SUBJ_OPEN, close: SUBJ_CLOSE },
    { span: objSpan, open: OBJ_OPEN, close: OBJ_CLOSE },
  ].sort((a, b) => a.span.start - b.span.start);

  let out = "";
  let cursor = 0;
  for (const { span, open, close } of pieces) {
    const prefix = question.slice(cursor, span.start);
    const needsSep = (out !== "" || prefix !== "") && !prefix.endsWith(" ");
    out += prefix + (needsSep ? " " : "") + `${open} ` + question.slice(span.start, span.end) + ` ${close}`;
    cursor = span.end;
  }
  let suffix = question.slice(cursor);
  if (suffix !== "" && !suffix.startsWith(" ")) {
    suffix = " " + suffix;
  }
  return out + suffix;
}
