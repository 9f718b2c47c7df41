// uichan: command-line front end over the C API.
//
// Exit codes: 0 success, 1 numerical check failure, 2 input error.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uichan/uichan.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitCheck = 1;
constexpr int kExitInput = 2;

struct Failure {
  int code;
  std::string message;
};

struct Deleter {
  void operator()(uichan_model* p) const { uichan_model_free(p); }
  void operator()(uichan_channel* p) const { uichan_channel_free(p); }
  void operator()(uichan_table* p) const { uichan_table_free(p); }
  void operator()(uichan_strategy* p) const { uichan_strategy_free(p); }
  void operator()(uichan_seesaw_result* p) const { uichan_seesaw_free(p); }
  void operator()(char* p) const { uichan_string_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Deleter>;

void ok(uichan_status status) {
  if (status == UICHAN_OK) return;
  const int code = (status == UICHAN_INCONSISTENT || status == UICHAN_INTERNAL) ? kExitCheck : kExitInput;
  throw Failure{code, std::string(uichan_status_string(status)) + ": " + uichan_last_error()};
}

std::string take(char* raw) {
  Owned<char> owned(raw);
  return std::string(owned.get());
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Failure{kExitCheck, "sha256 failed"};
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

struct Common {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int indent = 2;
};

// One invocation: inputs read and outputs written are recorded for the manifest.
class Run {
 public:
  Run(std::string command, const Common& common) : command_(std::move(command)), common_(common) {}

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitInput, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    inputs_.push_back({{"path", path}, {"sha256", sha256_hex(ss.str())}});
    return ss.str();
  }

  void write(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
      std::cout << payload;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kExitInput, "cannot write " + path};
    out << payload;
    outputs_.push_back({{"path", path}, {"sha256", sha256_hex(payload)}});
  }

  Json& config() { return config_; }

  void finish(std::chrono::steady_clock::time_point start) {
    if (outputs_.empty()) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Json manifest = {{"command", command_},
                     {"config", config_},
                     {"seed", common_.seed},
                     {"version", uichan_version()},
                     {"inputs", inputs_},
                     {"outputs", outputs_},
                     {"wall_ms", ms}};
    const std::string path = outputs_.front()["path"].get<std::string>() + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kExitInput, "cannot write " + path};
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  Common common_;
  Json config_ = Json::object();
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

std::size_t max_n_from_env() {
  const char* raw = std::getenv("UICHAN_MAX_N");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw Failure{kExitInput, "UICHAN_MAX_N must be a positive integer"};
  return static_cast<std::size_t>(v);
}

void add_common(CLI::App* sub, Common& c, bool input, bool seed, bool tol) {
  if (input) sub->add_option("-i,--input", c.input, "Input file")->required();
  sub->add_option("-o,--output", c.output, "Output file (default stdout)");
  if (seed) sub->add_option("--seed", c.seed, "Random seed");
  if (tol) sub->add_option("--tol", c.tol, "Tolerance override");
  sub->add_option("--json-indent", c.indent, "JSON indent, negative for compact")->capture_default_str();
}

std::string line(std::string s) { return s + "\n"; }

Owned<uichan_table> load_functional(Run& run, const std::string& path, const std::string& preset) {
  uichan_table* raw = nullptr;
  if (!path.empty()) {
    ok(uichan_table_parse(run.read(path).c_str(), &raw));
  } else if (!preset.empty()) {
    ok(uichan_functional_preset(preset.c_str(), &raw));
  } else {
    throw Failure{kExitInput, "a functional file (-f) or --preset is required"};
  }
  return Owned<uichan_table>(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary induced channels: models, channels, behaviours and see-saw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uichan_version()));

  Common common;
  std::function<int(Run&)> action;
  std::string command;

  // gen
  std::string kind = "tensor", state_kind = "vector";
  std::size_t n = 2, m = 2, dA = 2, dB = 2;
  auto* gen = app.add_subcommand("gen", "Generate a random model or strategy");
  add_common(gen, common, false, true, false);
  gen->add_option("--kind", kind, "tensor | commuting | strategy")
      ->check(CLI::IsMember({"tensor", "commuting", "strategy"}))
      ->capture_default_str();
  gen->add_option("--n", n, "Outcomes / ancilla dimension")->capture_default_str();
  gen->add_option("--m", m, "Settings")->capture_default_str();
  gen->add_option("--dA", dA, "Alice's local dimension")->capture_default_str();
  gen->add_option("--dB", dB, "Bob's local dimension")->capture_default_str();
  gen->add_option("--state", state_kind, "vector | density")
      ->check(CLI::IsMember({"vector", "density"}))
      ->capture_default_str();
  gen->callback([&] {
    command = "gen";
    action = [&](Run& run) {
      run.config() = {{"kind", kind}, {"n", n}, {"m", m}, {"dA", dA}, {"dB", dB}, {"state", state_kind}};
      std::string payload;
      if (kind == "strategy") {
        uichan_strategy* raw = nullptr;
        ok(uichan_strategy_random(n, m, dA, dB, common.seed, &raw));
        Owned<uichan_strategy> s(raw);
        payload = take([&] { char* out = nullptr; ok(uichan_strategy_to_json(s.get(), common.indent, &out)); return out; }());
      } else {
        uichan_model* raw = nullptr;
        ok(uichan_model_generate(kind == "tensor" ? UICHAN_TENSOR : UICHAN_COMMUTING, n, m, dA, dB,
                                 state_kind == "vector" ? UICHAN_STATE_VECTOR : UICHAN_STATE_DENSITY,
                                 common.seed, &raw));
        Owned<uichan_model> model(raw);
        payload = take([&] { char* out = nullptr; ok(uichan_model_to_json(model.get(), common.indent, &out)); return out; }());
      }
      run.write(common.output, line(payload));
      return 0;
    };
  });

  // channel
  std::string method = "direct";
  bool audit = false;
  auto* channel = app.add_subcommand("channel", "Compute the induced channel family of a model");
  add_common(channel, common, true, false, true);
  channel->add_option("--method", method, "direct | moments")
      ->check(CLI::IsMember({"direct", "moments"}))
      ->capture_default_str();
  channel->add_flag("--audit", audit, "Print a CPTP audit report to stdout");
  channel->callback([&] {
    command = "channel";
    action = [&](Run& run) {
      run.config() = {{"method", method}, {"audit", audit}, {"tol", common.tol}};
      const std::size_t max_n = max_n_from_env();
      run.config()["max_n"] = max_n;
      uichan_model* raw = nullptr;
      ok(uichan_model_parse(run.read(common.input).c_str(), &raw));
      Owned<uichan_model> model(raw);
      uichan_channel* craw = nullptr;
      ok(uichan_channel_compute(model.get(), method == "direct" ? UICHAN_METHOD_DIRECT : UICHAN_METHOD_MOMENTS,
                                common.tol, max_n, &craw));
      Owned<uichan_channel> ch(craw);
      char* out = nullptr;
      ok(uichan_channel_to_json(ch.get(), common.indent, &out));
      const std::string payload = take(out);
      if (!audit || !common.output.empty()) run.write(common.output, line(payload));
      if (!audit) return 0;
      int pass = 0;
      ok(uichan_channel_audit(ch.get(), common.indent, &out, &pass));
      std::cout << take(out) << '\n';
      return pass ? 0 : kExitCheck;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Audit a model: unitarity, commutation, CPTP, dual formula, embedding");
  add_common(verify, common, true, false, true);
  verify->callback([&] {
    command = "verify";
    action = [&](Run& run) {
      const std::size_t max_n = max_n_from_env();
      run.config() = {{"tol", common.tol}, {"max_n", max_n}};
      uichan_model* raw = nullptr;
      ok(uichan_model_parse(run.read(common.input).c_str(), &raw));
      Owned<uichan_model> model(raw);
      char* out = nullptr;
      int pass = 0;
      ok(uichan_model_verify(model.get(), common.tol, max_n, common.indent, &out, &pass));
      run.write(common.output, line(take(out)));
      return pass ? 0 : kExitCheck;
    };
  });

  // bell
  bool csv = false;
  auto* bell = app.add_subcommand("bell", "Extract the behaviour encoded in a channel family");
  add_common(bell, common, true, false, false);
  bell->add_flag("--csv", csv, "Write CSV (a,b,x,y,value; 1-based) instead of JSON");
  bell->callback([&] {
    command = "bell";
    action = [&](Run& run) {
      run.config() = {{"csv", csv}};
      uichan_channel* raw = nullptr;
      ok(uichan_channel_parse(run.read(common.input).c_str(), &raw));
      Owned<uichan_channel> ch(raw);
      uichan_table* traw = nullptr;
      ok(uichan_behaviour_from_channel(ch.get(), &traw));
      Owned<uichan_table> table(traw);
      char* out = nullptr;
      ok(uichan_extraction_report(ch.get(), -1, &out));
      std::cerr << "extraction " << take(out) << '\n';
      if (csv) {
        ok(uichan_table_to_csv(table.get(), &out));
        run.write(common.output, take(out));
      } else {
        ok(uichan_table_to_json(table.get(), common.indent, &out));
        run.write(common.output, line(take(out)));
      }
      return 0;
    };
  });

  // bell-direct
  auto* bell_direct = app.add_subcommand("bell-direct", "Born-rule behaviour of a strategy");
  add_common(bell_direct, common, true, false, false);
  bell_direct->add_flag("--csv", csv, "Write CSV (a,b,x,y,value; 1-based) instead of JSON");
  bell_direct->callback([&] {
    command = "bell-direct";
    action = [&](Run& run) {
      run.config() = {{"csv", csv}};
      uichan_strategy* raw = nullptr;
      ok(uichan_strategy_parse(run.read(common.input).c_str(), &raw));
      Owned<uichan_strategy> s(raw);
      uichan_table* traw = nullptr;
      ok(uichan_behaviour_direct(s.get(), &traw));
      Owned<uichan_table> table(traw);
      char* out = nullptr;
      if (csv) {
        ok(uichan_table_to_csv(table.get(), &out));
        run.write(common.output, take(out));
      } else {
        ok(uichan_table_to_json(table.get(), common.indent, &out));
        run.write(common.output, line(take(out)));
      }
      return 0;
    };
  });

  // seesaw
  std::string functional_path, preset;
  uichan_seesaw_config cfg;
  uichan_seesaw_config_default(&cfg);
  bool heuristic = false;
  auto* seesaw = app.add_subcommand("seesaw", "Maximize a Bell functional and verify the lifted channel");
  add_common(seesaw, common, false, true, false);
  seesaw->add_option("-f,--functional", functional_path, "Functional file (table schema)");
  seesaw->add_option("--preset", preset, "Built-in functional")->check(CLI::IsMember({"chsh"}));
  seesaw->add_option("--dA", cfg.dA, "Alice's dimension")->capture_default_str();
  seesaw->add_option("--dB", cfg.dB, "Bob's dimension")->capture_default_str();
  seesaw->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
  seesaw->add_option("--max-iters", cfg.max_iters, "Sweeps per restart")->capture_default_str();
  seesaw->add_option("--rel-tol", cfg.rel_tol, "Relative improvement stop")->capture_default_str();
  seesaw->add_flag("--heuristic", heuristic, "Allow more than two outcomes (inexact updates)");
  seesaw->callback([&] {
    command = "seesaw";
    action = [&](Run& run) {
      cfg.seed = common.seed;
      cfg.allow_heuristic = heuristic ? 1 : 0;
      run.config() = {{"functional", functional_path}, {"preset", preset},     {"dA", cfg.dA},
                      {"dB", cfg.dB},                  {"restarts", cfg.restarts}, {"max_iters", cfg.max_iters},
                      {"rel_tol", cfg.rel_tol},        {"heuristic", heuristic}};
      Owned<uichan_table> f = load_functional(run, functional_path, preset);
      uichan_seesaw_result* raw = nullptr;
      ok(uichan_seesaw_run(f.get(), &cfg, &raw));
      Owned<uichan_seesaw_result> result(raw);
      char* out = nullptr;
      int pass = 0;
      ok(uichan_seesaw_lift_and_verify(result.get(), -1, &out, &pass));
      Json payload = Json::parse(take(out));
      ok(uichan_seesaw_to_json(result.get(), -1, &out));
      payload = {{"result", Json::parse(take(out))}, {"lift", payload}};
      run.write(common.output, line(payload.dump(common.indent < 0 ? -1 : common.indent)));
      double value = 0.0;
      ok(uichan_seesaw_value(result.get(), &value));
      std::cerr << std::setprecision(12) << "seesaw value " << value << (pass ? " lift PASS" : " lift FAIL") << '\n';
      return pass ? 0 : kExitCheck;
    };
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Strategy -> lift -> channel -> behaviour vs Born rule");
  add_common(pipeline, common, false, false, true);
  pipeline->add_option("-i,--input", common.input, "Strategy file (default with --preset chsh: optimal CHSH strategy)");
  pipeline->add_option("-f,--functional", functional_path, "Functional file (table schema)");
  pipeline->add_option("--preset", preset, "Built-in functional")->check(CLI::IsMember({"chsh"}));
  pipeline->callback([&] {
    command = "pipeline";
    action = [&](Run& run) {
      const std::size_t max_n = max_n_from_env();
      run.config() = {{"strategy", common.input}, {"functional", functional_path},
                      {"preset", preset},         {"tol", common.tol},
                      {"max_n", max_n}};
      uichan_strategy* raw = nullptr;
      if (!common.input.empty()) {
        ok(uichan_strategy_parse(run.read(common.input).c_str(), &raw));
      } else if (preset == "chsh") {
        ok(uichan_strategy_chsh_optimal(&raw));
      } else {
        throw Failure{kExitInput, "a strategy file (-i) is required"};
      }
      Owned<uichan_strategy> s(raw);
      Owned<uichan_table> f = load_functional(run, functional_path, preset);
      char* out = nullptr;
      int pass = 0;
      ok(uichan_pipeline(s.get(), f.get(), common.tol, max_n, common.indent, &out, &pass));
      run.write(common.output, line(take(out)));
      return pass ? 0 : kExitCheck;
    };
  });

  // swap-demo
  int trials = 10;
  auto* swap = app.add_subcommand("swap-demo", "Check the SWAP model yields the constant channel");
  add_common(swap, common, false, true, false);
  swap->add_option("--n", n, "Dimension, 2..4")->capture_default_str();
  swap->add_option("--trials", trials, "Random input states")->capture_default_str();
  swap->callback([&] {
    command = "swap-demo";
    action = [&](Run& run) {
      run.config() = {{"n", n}, {"trials", trials}};
      char* out = nullptr;
      int pass = 0;
      ok(uichan_swap_demo(n, common.seed, trials, common.indent, &out, &pass));
      const Json report = Json::parse(take(out));
      run.write(common.output, line(report.dump(common.indent < 0 ? -1 : common.indent)));
      std::cerr << (pass ? "PASS" : "FAIL") << " max defect " << std::setprecision(3)
                << report["max_defect"].get<double>() << '\n';
      return pass ? 0 : kExitCheck;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Run run(command, common);
    const int code = action(run);
    run.finish(start);
    return code;
  } catch (const Failure& f) {
    std::cerr << "uichan " << command << ": " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "uichan " << command << ": " << e.what() << '\n';
    return kExitInput;
  }
}
