/** Question-time encoding: mark, tokenize, index. */

import { markTokens } from "./data.js";
import { EndpointDescriptor, markQuestion } from "./marking.js";
import { Vocab } from "./vocab.js";

export function encodeQuestionInstance(
  question: string,
  subj: EndpointDescriptor,
  obj: EndpointDescriptor,
  vocab: Vocab,
  maxLen: number,
): { tokenIds: number[]; subjPos: number; objPos: number } {
  const marked = markQuestion(question, subj, obj);
  const { tokens, subjPos, objPos } = markTokens(marked);
  if (subjPos >= maxLen || objPos >= maxLen) {
    throw new Error(`question longer than ${maxLen} tokens cuts off a marker`);
  }
  return { tokenIds: vocab.encode(tokens, maxLen), subjPos, objPos };
}
