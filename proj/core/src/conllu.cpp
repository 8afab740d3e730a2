#include "pwcn/conllu.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "pwcn/error.hpp"

namespace pwcn::corpus {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

struct Block {
  std::vector<int> heads;
  std::vector<std::string> forms;
  std::string sent_id;
  std::size_t first_line = 0;
};

DepForest finish(Block& block) {
  try {
    DepForest f = make_forest(std::move(block.heads), std::move(block.forms));
    f.sent_id = std::move(block.sent_id);
    return f;
  } catch (const StructureError& e) {
    throw StructureError("sentence block at line " +
                         std::to_string(block.first_line) + ": " + e.what());
  }
}

}  // namespace

DepForest make_forest(std::vector<int> heads, std::vector<std::string> forms) {
  const auto n = static_cast<int>(heads.size());
  if (n == 0) throw StructureError("empty dependency structure");
  if (!forms.empty() && forms.size() != heads.size()) {
    throw StructureError("forms and heads differ in length");
  }
  for (int i = 0; i < n; ++i) {
    if (heads[i] == i) {
      throw StructureError("token " + std::to_string(i + 1) + " heads itself");
    }
    if (heads[i] != DepForest::kRoot && (heads[i] < 0 || heads[i] >= n)) {
      throw StructureError("token " + std::to_string(i + 1) +
                           " has out-of-range head");
    }
  }

  // Walk each token upwards; more than n steps means a cycle.
  std::vector<int> tree_id(n, -2);
  for (int i = 0; i < n; ++i) {
    std::vector<int> path;
    int cur = i;
    while (tree_id[cur] == -2 && heads[cur] != DepForest::kRoot) {
      path.push_back(cur);
      if (static_cast<int>(path.size()) > n) {
        throw StructureError("heads form a cycle through token " +
                             std::to_string(i + 1));
      }
      cur = heads[cur];
    }
    const int root = tree_id[cur] != -2 ? tree_id[cur] : cur;
    tree_id[cur] = root;
    for (int j : path) tree_id[j] = root;
  }

  DepForest forest;
  forest.heads = std::move(heads);
  forest.tree_id = std::move(tree_id);
  forest.forms = std::move(forms);
  return forest;
}

std::vector<DepForest> parse_conllu(std::string_view text) {
  std::vector<DepForest> forests;
  Block block;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty()) {
      if (!block.heads.empty()) forests.push_back(finish(block));
      block = Block{};
      continue;
    }
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.starts_with("sent_id")) {
        body.remove_prefix(7);
        body = trim(body);
        if (!body.empty() && body.front() == '=') body = trim(body.substr(1));
        block.sent_id = std::string(body);
      }
      continue;
    }

    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    const std::string_view id = cols[0];
    if (id.find('-') != id.npos || id.find('.') != id.npos) continue;

    int token_id = 0;
    if (!parse_int(id, token_id)) {
      throw ParseError("bad token ID \"" + std::string(id) + "\"", line_no);
    }
    if (block.heads.empty()) block.first_line = line_no;
    if (token_id != static_cast<int>(block.heads.size()) + 1) {
      throw ParseError("token IDs must run 1, 2, ...; got " +
                           std::string(id),
                       line_no);
    }
    int head = 0;
    if (!parse_int(cols[6], head) || head < 0) {
      throw ParseError("bad HEAD \"" + std::string(cols[6]) + "\"", line_no);
    }
    block.heads.push_back(head == 0 ? DepForest::kRoot : head - 1);
    block.forms.emplace_back(cols[1]);
  }
  if (!block.heads.empty()) forests.push_back(finish(block));
  return forests;
}

std::string serialize_conllu(std::span<const DepForest> forests) {
  std::ostringstream out;
  for (const DepForest& f : forests) {
    if (!f.sent_id.empty()) out << "# sent_id = " << f.sent_id << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
      const int head = f.heads[i] == DepForest::kRoot ? 0 : f.heads[i] + 1;
      const std::string& form =
          f.forms.empty() || f.forms[i].empty() ? std::string("_") : f.forms[i];
      out << i + 1 << '\t' << form << "\t_\t_\t_\t_\t" << head << "\t"
          << (head == 0 ? "root" : "dep") << "\t_\t_\n";
    }
    out << '\n';
  }
  return out.str();
}

std::vector<DepForest> align_forests(std::span<const Instance> instances,
                                     std::span<const DepForest> forests) {
  std::vector<DepForest> out;
  out.reserve(instances.size());
  for (const Instance& inst : instances) {
    if (inst.sentence_index >= forests.size()) {
      throw AlignmentError("sentence " + inst.sentence_id +
                           ": no dependency parse (only " +
                           std::to_string(forests.size()) + " blocks)");
    }
    const DepForest& f = forests[inst.sentence_index];
    if (!f.sent_id.empty() && !inst.sentence_id.empty() &&
        f.sent_id != inst.sentence_id) {
      throw AlignmentError("sentence " + inst.sentence_id +
                           ": parse block is labelled " + f.sent_id);
    }
    if (f.size() != inst.size()) {
      throw AlignmentError("sentence " + inst.sentence_id + ": " +
                           std::to_string(inst.size()) + " tokens but " +
                           std::to_string(f.size()) + " parse nodes");
    }
    for (std::size_t i = 0; i < f.forms.size(); ++i) {
      if (f.forms[i] != inst.tokens[i]) {
        throw AlignmentError("sentence " + inst.sentence_id + ": token " +
                             std::to_string(i + 1) + " is \"" +
                             inst.tokens[i] + "\" but parse has \"" +
                             f.forms[i] + "\"");
      }
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace pwcn::corpus
