#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pwcn/instance.hpp"
#include "pwcn/tokenizer.hpp"

namespace pwcn::corpus {

// One aspectTerm element, resolved against its sentence text.
struct AspectRecord {
  std::string sentence_id;
  std::size_t sentence_index = 0;
  std::string raw_sentence;
  std::string term;
  CharSpan span;
  Polarity label = Polarity::kNeutral;
};

struct SemevalSentence {
  std::string id;
  std::string text;
  std::vector<AspectRecord> aspects;  // "conflict" already removed
};

// Parses SemEval-2014 Task 4 XML. Every <sentence> is returned, including
// those without aspect terms, in document order.
// Throws ParseError (with line number) on malformed XML and AlignmentError
// when from/to do not slice the `term` text out of the sentence.
std::vector<SemevalSentence> parse_semeval_sentences(std::string_view xml_text);

// Flattened form: one record per non-conflict aspectTerm.
std::vector<AspectRecord> parse_semeval_xml(std::string_view xml_text);

// parse_semeval_xml followed by tokenize_and_align on every record.
std::vector<Instance> load_instances(std::string_view xml_text);

}  // namespace pwcn::corpus
