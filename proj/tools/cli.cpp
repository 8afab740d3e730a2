#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

#include "pwcn/checkpoint.hpp"
#include "pwcn/conllu.hpp"
#include "pwcn/embeddings.hpp"
#include "pwcn/error.hpp"
#include "pwcn/metrics.hpp"
#include "pwcn/semeval_xml.hpp"
#include "pwcn/tokenizer.hpp"
#include "pwcn/train.hpp"
#include "pwcn/vocabulary.hpp"

namespace pwcn::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kClassNames{"negative", "neutral", "positive"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

std::string fixed(double v, int digits = 6) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

class Sha1 {
 public:
  Sha1() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha1(), nullptr) != 1) {
      throw Error("SHA-1 unavailable");
    }
  }
  void update(const void* data, std::size_t size) {
    EVP_DigestUpdate(ctx_.get(), data, size);
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof(buf), "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx_;
};

std::string blob_header(std::uintmax_t size) {
  std::string h = "blob " + std::to_string(size);
  h.push_back('\0');
  return h;
}

// Streams the file so large embedding files are never held in memory.
std::string git_blob_hash_file(const std::string& path) {
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) throw DataError("cannot read " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  Sha1 sha;
  const std::string header = blob_header(size);
  sha.update(header.data(), header.size());
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    sha.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return sha.hex();
}

// ---------------------------------------------------------------------------
// Data loading

struct Split {
  std::vector<Instance> instances;
  std::vector<proximity::ProximityVector> weights;
};

std::vector<Instance> load_xml(const std::string& path) {
  auto instances = corpus::load_instances(read_file(path));
  if (instances.empty()) throw DataError(path + " contains no usable aspect terms");
  return instances;
}

Split load_split(const std::string& xml, const std::string& conllu,
                 proximity::Mode mode) {
  Split split;
  split.instances = load_xml(xml);
  if (mode == proximity::Mode::kPosition) {
    for (const auto& inst : split.instances) {
      split.weights.push_back(proximity::compute(mode, inst));
    }
    return split;
  }
  const auto forests = corpus::parse_conllu(read_file(conllu));
  const auto aligned = corpus::align_forests(split.instances, forests);
  for (std::size_t i = 0; i < split.instances.size(); ++i) {
    split.weights.push_back(proximity::compute(mode, split.instances[i], &aligned[i]));
  }
  return split;
}

std::array<std::size_t, kNumPolarities> class_counts(const std::vector<Instance>& xs) {
  std::array<std::size_t, kNumPolarities> n{};
  for (const auto& x : xs) ++n[static_cast<int>(x.label)];
  return n;
}

proximity::Mode mode_flag(const std::string& s) {
  const auto mode = proximity::parse_mode(s);
  if (!mode) throw UsageError("--mode must be pos or dep, got '" + s + "'");
  return *mode;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string mode = "pos";
  std::string train_xml, test_xml, conllu_train, conllu_test, embeddings;
  std::string out_dir;
  int runs = 3;
  bool freeze_embeddings = false;
  bool skip_malformed = false;
  train::TrainConfig config;
};

void apply_seed_env(std::uint64_t& seed) {
  const char* env = std::getenv("PWCN_SEED");
  if (!env || !*env) return;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string_view(env).size()) throw std::invalid_argument(env);
    seed = v;
  } catch (const std::exception&) {
    throw UsageError(std::string("PWCN_SEED is not an unsigned integer: ") + env);
  }
}

int cmd_train(TrainArgs a, std::ostream& out, std::ostream& err) {
  auto& c = a.config;
  c.mode = mode_flag(a.mode);
  c.train_embedding = !a.freeze_embeddings;
  apply_seed_env(c.seed);
  if (c.mode == proximity::Mode::kDependency &&
      (a.conllu_train.empty() || a.conllu_test.empty())) {
    throw UsageError("--mode dep needs --conllu-train and --conllu-test");
  }
  if (a.runs < 1) throw UsageError("--runs must be >= 1");
  train::validate(c);

  const Split train_split = load_split(a.train_xml, a.conllu_train, c.mode);
  const Split test_split = load_split(a.test_xml, a.conllu_test, c.mode);

  std::vector<Instance> all = train_split.instances;
  all.insert(all.end(), test_split.instances.begin(), test_split.instances.end());
  const auto vocab = corpus::Vocabulary::build(all);

  std::ifstream emb_in(a.embeddings, std::ios::binary);
  if (!emb_in) throw DataError("cannot read " + a.embeddings);
  corpus::EmbeddingOptions emb_options;
  emb_options.seed = c.seed;
  emb_options.skip_malformed = a.skip_malformed;
  const auto table = corpus::load_embeddings(emb_in, vocab, c.embed_dim, emb_options);
  err << "vocabulary " << vocab.size() << " entries, " << table.found
      << " found in " << a.embeddings << '\n';

  const auto train_set = train::encode(train_split.instances, train_split.weights, vocab);
  const auto test_set = train::encode(test_split.instances, test_split.weights, vocab);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_file(dir / "vocab.txt", vocab.serialize());

  std::ostringstream manifest;
  manifest << "command=train\n"
           << "mode=" << proximity::mode_name(c.mode) << '\n'
           << "train_xml=" << a.train_xml << '\n'
           << "train_xml.hash=" << git_blob_hash_file(a.train_xml) << '\n'
           << "test_xml=" << a.test_xml << '\n'
           << "test_xml.hash=" << git_blob_hash_file(a.test_xml) << '\n';
  if (c.mode == proximity::Mode::kDependency) {
    manifest << "conllu_train=" << a.conllu_train << '\n'
             << "conllu_train.hash=" << git_blob_hash_file(a.conllu_train) << '\n'
             << "conllu_test=" << a.conllu_test << '\n'
             << "conllu_test.hash=" << git_blob_hash_file(a.conllu_test) << '\n';
  }
  manifest << "embeddings=" << a.embeddings << '\n'
           << "embeddings.hash=" << git_blob_hash_file(a.embeddings) << '\n'
           << "embeddings.found=" << table.found << '\n'
           << "seed=" << c.seed << '\n'
           << "runs=" << a.runs << '\n'
           << "epochs=" << c.epochs << '\n'
           << "batch_size=" << c.batch_size << '\n'
           << "learning_rate=" << c.learning_rate << '\n'
           << "l2=" << c.l2 << '\n'
           << "kernel=" << c.kernel << '\n'
           << "embed_dim=" << c.embed_dim << '\n'
           << "hidden_dim=" << c.hidden_dim << '\n'
           << "init_range=" << c.init_range << '\n'
           << "adam_beta1=" << c.beta1 << '\n'
           << "adam_beta2=" << c.beta2 << '\n'
           << "adam_epsilon=" << c.epsilon << '\n'
           << "train_embedding=" << (c.train_embedding ? "true" : "false") << '\n'
           << "vocab_size=" << vocab.size() << '\n'
           << "vocab_hash=" << vocab.hash() << '\n';
  for (const auto& [name, split] :
       {std::pair{"train", &train_split}, std::pair{"test", &test_split}}) {
    const auto counts = class_counts(split->instances);
    manifest << name << ".instances=" << split->instances.size() << '\n';
    for (int k = 0; k < kNumPolarities; ++k) {
      manifest << name << '.' << kClassNames[k] << '=' << counts[k] << '\n';
    }
  }
  write_file(dir / "manifest.txt", manifest.str());

  std::ostringstream report;
  double acc_sum = 0.0, f1_sum = 0.0;
  int best_run = 0;
  double best_acc = -1.0;
  for (int run = 1; run <= a.runs; ++run) {
    train::TrainConfig rc = c;
    rc.seed = c.seed + static_cast<std::uint64_t>(run - 1);
    std::ostringstream log;
    train::TrainHooks hooks;
    hooks.on_epoch = [&](const train::EpochLog& e) {
      log << train::format_epoch(e) << '\n';
      err << "run " << run << " epoch " << e.epoch << " loss " << fixed(e.train_loss, 4)
          << " acc " << fixed(e.test_accuracy, 4) << " macro-F1 "
          << fixed(e.test_macro_f1, 4) << '\n';
    };
    auto result = train::train(rc, train::init_params(c.hyper(), rc.seed, table, c.init_range),
                               train_set, test_set, hooks);

    Checkpoint ckpt;
    ckpt.meta.hyper = c.hyper();
    ckpt.meta.vocab_hash = vocab.hash();
    ckpt.meta.vocab_size = vocab.size();
    ckpt.meta.mode = c.mode;
    ckpt.meta.seed = rc.seed;
    ckpt.meta.extra["best_epoch"] = std::to_string(result.best_epoch);
    ckpt.meta.extra["test_accuracy"] = fixed(result.best_report.accuracy);
    ckpt.meta.extra["test_macro_f1"] = fixed(result.best_report.macro_f1);
    ckpt.params = std::move(result.best);

    const fs::path run_dir = dir / ("run_" + std::to_string(run));
    fs::create_directories(run_dir);
    save_checkpoint((run_dir / "checkpoint.pwcn").string(), ckpt);
    write_file(run_dir / "epochs.tsv", log.str());

    const auto& r = result.best_report;
    const std::string prefix = "run" + std::to_string(run) + '.';
    report << prefix << "seed\t" << rc.seed << '\n'
           << prefix << "best_epoch\t" << result.best_epoch << '\n'
           << prefix << "accuracy\t" << fixed(r.accuracy) << '\n'
           << prefix << "macro_f1\t" << fixed(r.macro_f1) << '\n';
    acc_sum += r.accuracy;
    f1_sum += r.macro_f1;
    if (r.accuracy > best_acc) {
      best_acc = r.accuracy;
      best_run = run;
    }
  }
  const double mean_acc = acc_sum / a.runs;
  const double mean_f1 = f1_sum / a.runs;
  report << "mean.accuracy\t" << fixed(mean_acc) << '\n'
         << "mean.macro_f1\t" << fixed(mean_f1) << '\n'
         << "best_run\t" << best_run << '\n';
  write_file(dir / "report.tsv", report.str());

  const fs::path best_dir = dir / ("run_" + std::to_string(best_run));
  fs::copy_file(best_dir / "checkpoint.pwcn", dir / "checkpoint.pwcn",
                fs::copy_options::overwrite_existing);
  fs::copy_file(best_dir / "epochs.tsv", dir / "epochs.tsv",
                fs::copy_options::overwrite_existing);

  out << "accuracy " << fixed(100.0 * mean_acc, 2) << "  macro-F1 "
      << fixed(100.0 * mean_f1, 2) << "  (mean over " << a.runs << " run"
      << (a.runs == 1 ? "" : "s") << ", best-epoch selection)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// eval and explain share checkpoint + vocabulary loading

struct Model {
  Checkpoint ckpt;
  corpus::Vocabulary vocab;
};

Model load_model(const std::string& checkpoint, std::string vocab_path) {
  Model m;
  m.ckpt = load_checkpoint(checkpoint);
  if (vocab_path.empty()) {
    vocab_path = (fs::path(checkpoint).parent_path() / "vocab.txt").string();
  }
  m.vocab = corpus::Vocabulary::deserialize(read_file(vocab_path));
  if (m.vocab.hash() != m.ckpt.meta.vocab_hash ||
      m.vocab.size() != m.ckpt.meta.vocab_size) {
    throw DataError("vocabulary " + vocab_path + " does not match " + checkpoint +
                    " (hash or size differs); refusing to run");
  }
  return m;
}

struct EvalArgs {
  std::string checkpoint, test_xml, conllu_test, vocab, report;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Model m = load_model(a.checkpoint, a.vocab);
  const auto mode = m.ckpt.meta.mode;
  if (mode == proximity::Mode::kDependency && a.conllu_test.empty()) {
    throw UsageError("checkpoint uses dependency proximity; pass --conllu-test");
  }
  const Split split = load_split(a.test_xml, a.conllu_test, mode);
  const auto examples = train::encode(split.instances, split.weights, m.vocab);
  const auto report = train::evaluate(m.ckpt.params, examples);
  out << metrics::format_report(report, kClassNames);
  const fs::path path = a.report.empty()
                            ? fs::path(a.checkpoint).parent_path() / "eval_report.tsv"
                            : fs::path(a.report);
  write_file(path, metrics::format_report_tsv(report, kClassNames));
  return kOk;
}

struct ExplainArgs {
  std::string checkpoint, vocab, sentence, aspect, conllu, conllu_line, html;
  bool plain = false;
};

std::size_t codepoints(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
}

corpus::DepForest explain_forest(const ExplainArgs& a) {
  if (!a.conllu_line.empty()) {
    std::istringstream in(a.conllu_line);
    std::vector<int> heads;
    std::string field;
    while (in >> field) {
      try {
        std::size_t used = 0;
        const int h = std::stoi(field, &used);
        if (used != field.size() || h < 0) throw std::invalid_argument(field);
        heads.push_back(h == 0 ? corpus::DepForest::kRoot : h - 1);
      } catch (const std::exception&) {
        throw UsageError("--conllu-line takes 1-based heads (0 = root), got '" + field + "'");
      }
    }
    return corpus::make_forest(std::move(heads));
  }
  const auto forests = corpus::parse_conllu(read_file(a.conllu));
  if (forests.empty()) throw DataError(a.conllu + " holds no sentence");
  return forests.front();
}

int cmd_explain(const ExplainArgs& a, std::ostream& out) {
  const Model m = load_model(a.checkpoint, a.vocab);
  const auto mode = m.ckpt.meta.mode;
  if (mode == proximity::Mode::kDependency && a.conllu.empty() && a.conllu_line.empty()) {
    throw UsageError("checkpoint uses dependency proximity; pass --conllu or --conllu-line");
  }
  const auto at = a.aspect.empty() ? std::string::npos : a.sentence.find(a.aspect);
  if (at == std::string::npos) {
    throw DataError("aspect \"" + a.aspect + "\" not found in sentence \"" + a.sentence + "\"");
  }
  const std::size_t from = codepoints(std::string_view(a.sentence).substr(0, at));
  Instance inst = corpus::tokenize_and_align(a.sentence, {from, from + codepoints(a.aspect)});

  proximity::ProximityVector weights;
  if (mode == proximity::Mode::kPosition) {
    weights = proximity::compute(mode, inst);
  } else {
    const auto forest = explain_forest(a);
    if (forest.size() != inst.size()) {
      throw AlignmentError("parse has " + std::to_string(forest.size()) + " tokens but \"" +
                           a.sentence + "\" tokenizes to " + std::to_string(inst.size()));
    }
    weights = proximity::compute(mode, inst, &forest);
  }

  nn::Example ex;
  ex.token_ids = m.vocab.encode(inst.tokens);
  ex.proximity = weights;
  ex.label = 0;
  const auto batch = nn::pack(std::span<const nn::Example>(&ex, 1));
  const auto trace = nn::forward(m.ckpt.params, batch);
  std::vector<int> wins(inst.size(), 0);
  for (nn::Index j = 0; j < trace.argmax.rows(); ++j) ++wins[trace.argmax(j, 0)];
  const int pred = train::argmax(trace.probs.col(0));
  const auto shade = shades(inst, weights);

  out << "mode " << proximity::mode_name(mode) << '\n';
  char line[160];
  std::snprintf(line, sizeof(line), "%4s  %-16s %8s %6s %6s\n", "idx", "token", "p", "shade", "pool");
  out << line;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    std::snprintf(line, sizeof(line), "%4zu  %-16s %8.4f %6.2f %6d%s\n", i, inst.tokens[i].c_str(),
                  weights[i], shade[i], wins[i], inst.in_aspect(i) ? "  aspect" : "");
    out << line;
  }
  if (!a.plain) out << render_ansi(inst, shade) << '\n';
  out << "prediction " << kClassNames[pred];
  for (int k = 0; k < trace.probs.rows(); ++k) {
    out << "  " << kClassNames[k] << ' ' << fixed(trace.probs(k, 0), 4);
  }
  out << '\n';
  if (!a.html.empty()) write_file(a.html, render_html(inst, weights, shade, kClassNames[pred]));
  return kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string git_blob_hash(std::string_view content) {
  Sha1 sha;
  const std::string header = blob_header(content.size());
  sha.update(header.data(), header.size());
  sha.update(content.data(), content.size());
  return sha.hex();
}

std::vector<double> shades(const Instance& inst,
                           const proximity::ProximityVector& weights) {
  double top = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!inst.in_aspect(i)) top = std::max(top, weights[i]);
  }
  std::vector<double> s(weights.size(), 0.0);
  if (top <= 0.0) return s;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!inst.in_aspect(i)) s[i] = weights[i] / top;
  }
  return s;
}

std::string render_ansi(const Instance& inst, const std::vector<double>& shade) {
  std::string out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i > 0) out += ' ';
    if (inst.in_aspect(i)) {
      out += "\x1b[1;4m" + inst.tokens[i] + "\x1b[0m";
      continue;
    }
    const int fade = static_cast<int>(std::lround(255.0 * (1.0 - shade[i])));
    out += "\x1b[38;2;0;0;0;48;2;255;" + std::to_string(fade) + ';' +
           std::to_string(fade) + 'm' + inst.tokens[i] + "\x1b[0m";
  }
  return out;
}

std::string render_html(const Instance& inst,
                        const proximity::ProximityVector& weights,
                        const std::vector<double>& shade,
                        std::string_view predicted) {
  auto escape = [](const std::string& s) {
    std::string e;
    for (char ch : s) {
      switch (ch) {
        case '&': e += "&amp;"; break;
        case '<': e += "&lt;"; break;
        case '>': e += "&gt;"; break;
        case '"': e += "&quot;"; break;
        default: e += ch;
      }
    }
    return e;
  };
  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>pwcn explain</title>"
    << "<style>span{padding:2px 3px;margin:1px;font-family:sans-serif}"
    << ".aspect{font-weight:bold;text-decoration:underline}</style></head><body>\n<p>";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.in_aspect(i)) {
      h << "<span class=\"aspect\" title=\"p=0\">" << escape(inst.tokens[i]) << "</span>";
    } else {
      h << "<span style=\"background:rgba(220,30,30," << fixed(shade[i], 3)
        << ")\" title=\"p=" << fixed(weights[i], 4) << "\">" << escape(inst.tokens[i])
        << "</span>";
    }
    h << ' ';
  }
  h << "</p>\n<p>prediction: " << predicted << "</p>\n</body></html>\n";
  return h.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proximity-weighted convolution network for aspect sentiment", "pwcn"};
  app.require_subcommand(1);

  TrainArgs ta;
  auto* tr = app.add_subcommand("train", "train and evaluate on SemEval XML");
  tr->add_option("--mode", ta.mode, "pos or dep")->capture_default_str();
  tr->add_option("--train-xml", ta.train_xml)->required();
  tr->add_option("--test-xml", ta.test_xml)->required();
  tr->add_option("--conllu-train", ta.conllu_train, "dependency parses (dep mode)");
  tr->add_option("--conllu-test", ta.conllu_test, "dependency parses (dep mode)");
  tr->add_option("--embeddings", ta.embeddings, "word vectors, text format")->required();
  tr->add_option("--out-dir", ta.out_dir)->required();
  tr->add_option("--epochs", ta.config.epochs)->capture_default_str();
  tr->add_option("--seed", ta.config.seed, "PWCN_SEED overrides")->capture_default_str();
  tr->add_option("--runs", ta.runs, "runs with seeds seed, seed+1, ...")->capture_default_str();
  tr->add_option("--kernel", ta.config.kernel, "convolution length (odd)")->capture_default_str();
  tr->add_option("--embed-dim", ta.config.embed_dim)->capture_default_str();
  tr->add_option("--hidden", ta.config.hidden_dim)->capture_default_str();
  tr->add_option("--lr", ta.config.learning_rate)->capture_default_str();
  tr->add_option("--l2", ta.config.l2)->capture_default_str();
  tr->add_option("--batch-size", ta.config.batch_size)->capture_default_str();
  tr->add_option("--init-range", ta.config.init_range)->capture_default_str();
  tr->add_flag("--freeze-embeddings", ta.freeze_embeddings);
  tr->add_flag("--skip-malformed-embeddings", ta.skip_malformed);

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "evaluate a checkpoint");
  ev->add_option("--checkpoint", ea.checkpoint)->required();
  ev->add_option("--test-xml", ea.test_xml)->required();
  ev->add_option("--conllu-test", ea.conllu_test);
  ev->add_option("--vocab", ea.vocab, "default: vocab.txt beside the checkpoint");
  ev->add_option("--report", ea.report, "default: eval_report.tsv beside the checkpoint");

  ExplainArgs xa;
  auto* ex = app.add_subcommand("explain", "per-token proximity weights and prediction");
  ex->add_option("--checkpoint", xa.checkpoint)->required();
  ex->add_option("--vocab", xa.vocab);
  ex->add_option("--sentence", xa.sentence)->required();
  ex->add_option("--aspect", xa.aspect)->required();
  auto* conllu = ex->add_option("--conllu", xa.conllu, "CoNLL-U file; first sentence is used");
  ex->add_option("--conllu-line", xa.conllu_line, "1-based heads, 0 = root, e.g. \"2 0 2\"")
      ->excludes(conllu);
  ex->add_option("--html", xa.html, "write an HTML heatmap");
  ex->add_flag("--plain", xa.plain, "no ANSI heatmap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (app.got_subcommand(tr)) return cmd_train(ta, out, err);
    if (app.got_subcommand(ev)) return cmd_eval(ea, out);
    return cmd_explain(xa, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace pwcn::cli
