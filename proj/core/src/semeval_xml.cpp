#include "pwcn/semeval_xml.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pwcn/error.hpp"

namespace pwcn::corpus {

namespace pt = boost::property_tree;

namespace {

std::size_t parse_offset(const std::string& value, const std::string& what,
                         const std::string& sentence_id) {
  std::size_t out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw AlignmentError("sentence " + sentence_id + ": bad '" + what +
                         "' offset \"" + value + "\"");
  }
  return out;
}

}  // namespace

std::vector<SemevalSentence> parse_semeval_sentences(std::string_view xml_text) {
  pt::ptree tree;
  std::istringstream in{std::string(xml_text)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line());
  }

  const auto root = tree.get_child_optional("sentences");
  if (!root) throw ParseError("missing <sentences> root element", 0);

  std::vector<SemevalSentence> sentences;
  for (const auto& [tag, node] : *root) {
    if (tag != "sentence") continue;
    SemevalSentence sent;
    sent.id = node.get<std::string>("<xmlattr>.id", "");
    sent.text = node.get<std::string>("text", "");
    const std::size_t index = sentences.size();

    if (const auto terms = node.get_child_optional("aspectTerms")) {
      for (const auto& [term_tag, term] : *terms) {
        if (term_tag != "aspectTerm") continue;
        const auto polarity = term.get<std::string>("<xmlattr>.polarity", "");
        if (polarity == "conflict") continue;
        const auto label = parse_polarity(polarity);
        if (!label) {
          throw DataError("sentence " + sent.id + ": unknown polarity \"" +
                          polarity + "\"");
        }
        AspectRecord rec;
        rec.sentence_id = sent.id;
        rec.sentence_index = index;
        rec.raw_sentence = sent.text;
        rec.term = term.get<std::string>("<xmlattr>.term", "");
        rec.span.from = parse_offset(
            term.get<std::string>("<xmlattr>.from", ""), "from", sent.id);
        rec.span.to = parse_offset(term.get<std::string>("<xmlattr>.to", ""),
                                   "to", sent.id);
        rec.label = *label;

        std::string sliced;
        try {
          if (rec.span.from > rec.span.to) throw ArgumentError("from > to");
          const std::size_t b = codepoint_to_byte(sent.text, rec.span.from);
          const std::size_t e = codepoint_to_byte(sent.text, rec.span.to);
          sliced = sent.text.substr(b, e - b);
        } catch (const ArgumentError&) {
          throw AlignmentError("sentence " + sent.id + ": span [" +
                               std::to_string(rec.span.from) + ", " +
                               std::to_string(rec.span.to) +
                               ") lies outside the text");
        }
        if (sliced != rec.term) {
          throw AlignmentError("sentence " + sent.id + ": span [" +
                               std::to_string(rec.span.from) + ", " +
                               std::to_string(rec.span.to) + ") slices \"" +
                               sliced + "\", expected term \"" + rec.term +
                               "\"");
        }
        sent.aspects.push_back(std::move(rec));
      }
    }
    sentences.push_back(std::move(sent));
  }
  return sentences;
}

std::vector<AspectRecord> parse_semeval_xml(std::string_view xml_text) {
  std::vector<AspectRecord> records;
  for (auto& sent : parse_semeval_sentences(xml_text)) {
    for (auto& rec : sent.aspects) records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Instance> load_instances(std::string_view xml_text) {
  std::vector<Instance> out;
  for (const AspectRecord& rec : parse_semeval_xml(xml_text)) {
    Instance inst;
    try {
      inst = tokenize_and_align(rec.raw_sentence, rec.span);
    } catch (const AlignmentError& e) {
      throw AlignmentError("sentence " + rec.sentence_id + ": " + e.what());
    }
    inst.label = rec.label;
    inst.sentence_id = rec.sentence_id;
    inst.sentence_index = rec.sentence_index;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace pwcn::corpus
