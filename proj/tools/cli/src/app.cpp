#include "nonholonomy/cli/app.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "nonholonomy/cli/document.hpp"
#include "nonholonomy/constructions.hpp"
#include "nonholonomy/sampling.hpp"
#include "nonholonomy/singularity.hpp"

namespace nonholonomy::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Context {
  std::uint64_t seed = 1;
  bool timings = false;
  bool all_true = true;
};

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return "sha256:" + hex.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("invalid seed '" + text + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("invalid value for " + key + ": '" + text + "'");
  }
  return v;
}

Json point_json(const Chart& chart, std::span<const Scalar> pt) {
  Json out = Json::object();
  for (std::size_t i = 0; i < pt.size(); ++i) out[chart.name(i)] = to_string(pt[i]);
  return out;
}

// "x=0,y=1/2"; unspecified coordinates are 0.
Point parse_point(const Chart& chart, const std::string& text) {
  Point pt(chart.dim(), Scalar(0));
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("point entries look like name=value, got '" + item + "'");
    const auto i = chart.index_of(item.substr(0, eq));
    if (!i) throw InputError("unknown coordinate '" + item.substr(0, eq) + "' in --point");
    pt[*i] = parse_scalar(item.substr(eq + 1));
  }
  return pt;
}

Json truth_json(Truth t) {
  if (t == Truth::True) return true;
  if (t == Truth::False) return false;
  return "indeterminate";
}

Json verdict_json(Context& ctx, Json task, const Chart& chart, const Verdict& v) {
  task["verdict"] = truth_json(v.value);
  task["certificate"] = v.certificate;
  task["samples_checked"] = v.witnesses.size();
  task["counterexample"] = v.counterexample ? point_json(chart, *v.counterexample) : Json(nullptr);
  if (v.value != Truth::True) ctx.all_true = false;
  return task;
}

template <class F>
Json timed(const Context& ctx, F&& body) {
  const auto start = Clock::now();
  Json task = body();
  if (ctx.timings) {
    task["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  return task;
}

std::vector<Point> samples_for(const Context& ctx, const Chart& chart) {
  return default_samples(chart.dim(), SampleOptions{ctx.seed, 100, 125});
}

Json flag_task(Context& ctx, const Distribution& d, const Point& pt) {
  return timed(ctx, [&] {
    const DerivedFlag f = derived_flag_at(d, pt);
    Json t;
    t["task"] = "flag";
    t["point"] = point_json(d.chart(), pt);
    t["ranks"] = f.ranks;
    t["stabilized"] = f.stabilized;
    return t;
  });
}

Json dlo_task(Context& ctx, const Distribution& d) {
  return timed(ctx, [&] {
    const auto pts = samples_for(ctx, d.chart());
    Json t;
    t["task"] = "check-dlo";
    return verdict_json(ctx, std::move(t), d.chart(), has_derived_length_one(d, pts));
  });
}

Json mni_task(Context& ctx, const Chart& chart, const std::vector<DiffForm>& coframe, std::size_t k) {
  return timed(ctx, [&] {
    const auto pts = samples_for(ctx, chart);
    Json t;
    t["task"] = "check-mni";
    t["k"] = k;
    return verdict_json(ctx, std::move(t), chart, check_mni(chart, coframe, k, pts));
  });
}

Json amni_task(Context& ctx, const Chart& chart, const std::vector<DiffForm>& coframe, const std::vector<DiffForm>& omegas,
               const std::vector<std::string>& names, std::size_t k) {
  return timed(ctx, [&] {
    const auto pts = samples_for(ctx, chart);
    Json t;
    t["task"] = "check-amni";
    t["k"] = k;
    t["omegas"] = names;
    return verdict_json(ctx, std::move(t), chart, check_almost_mni(chart, coframe, omegas, k, pts));
  });
}

Json thinness_task(Context& ctx, std::size_t n, std::size_t k, std::size_t samples, const ProbeOptions& opts) {
  return timed(ctx, [&] {
    const ProbeReport r = thinness_probe(n, k, samples, ctx.seed, opts);
    if (!r.passed()) ctx.all_true = false;
    Json t;
    t["task"] = "thinness";
    t["probe"] = Json::parse(to_json(r));
    return t;
  });
}

Json ori_task(Context& ctx, std::size_t k, std::size_t n) {
  return timed(ctx, [&] {
    if (k == 0) throw InputError("--k must be positive");
    if (n < 2 * k + 1) throw InputError("--n must be at least 2k+1");
    const Chart chart = Chart::numbered("x", n);
    std::vector<DiffForm> coframe;
    for (std::size_t j = 0; j < 2 * k + 1; ++j) coframe.push_back(DiffForm::differential(chart, j));
    const PropOriIdentity id = verify_prop_ori_identity(coframe, k);
    if (!id.holds) ctx.all_true = false;
    Json t;
    t["task"] = "verify-ori";
    t["k"] = k;
    t["n"] = n;
    t["holds"] = id.holds;
    t["magnitude"] = to_string(id.magnitude);
    t["signs"] = id.signs;
    Json omegas = Json::array();
    for (const auto& w : build_prop_ori_omegas(coframe)) omegas.push_back(w.to_string());
    t["omegas"] = omegas;
    return t;
  });
}

Json strings(const std::vector<DiffForm>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(f.to_string());
  return out;
}

std::vector<Json> example_tasks(Context& ctx, const std::string& name, bool check) {
  const BuiltExample ex = build_example(ExampleId::parse(name));
  const Distribution& d = ex.distribution;
  const Chart& chart = d.chart();
  std::vector<Json> out;

  Json t;
  t["task"] = "example";
  t["name"] = ex.name;
  t["chart"] = chart.names();
  t["rank"] = d.rank();
  t["coframe"] = d.coframe() ? strings(*d.coframe()) : Json::array();
  Json frame = Json::array();
  if (d.frame()) {
    for (const auto& x : *d.frame()) frame.push_back(x.to_string());
  }
  t["frame"] = frame;
  if (ex.omegas) t["omegas"] = strings(*ex.omegas);
  out.push_back(std::move(t));
  if (!check) return out;

  const Point origin(chart.dim(), Scalar(0));
  if (ex.bracket_generating) {
    out.push_back(flag_task(ctx, d, origin));
    out.push_back(dlo_task(ctx, d));
    if (ex.mni_k && d.coframe()) out.push_back(mni_task(ctx, chart, *d.coframe(), *ex.mni_k));
  } else {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= ex.omegas->size(); ++i) names.push_back("omega" + std::to_string(i));
    out.push_back(amni_task(ctx, chart, *d.coframe(), *ex.omegas, names, *ex.mni_k));
    out.push_back(ori_task(ctx, *ex.mni_k, 2 * *ex.mni_k + 1));
  }
  return out;
}

std::vector<DiffForm> resolve_omegas(const Document& doc, std::vector<std::string>& names) {
  if (names.empty()) names = doc.omegas;
  if (names.empty()) throw InputError("no omegas given: use --omegas or an omegas statement");
  std::vector<DiffForm> out;
  for (const auto& n : names) out.push_back(doc.form(n));
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t required_count(const TaskSpec& t, const char* key) {
  const auto v = t.arg(key);
  if (!v) throw InputError("task " + t.name + " needs " + key + "=...");
  return parse_count(key, *v);
}

std::vector<Json> document_tasks(Context& ctx, const Document& doc) {
  if (doc.tasks.empty()) throw InputError("document has no task statements");
  std::vector<Json> out;
  for (const auto& t : doc.tasks) {
    if (t.name == "flag") {
      out.push_back(flag_task(ctx, doc.distribution(), parse_point(*doc.chart, t.arg("point").value_or(""))));
    } else if (t.name == "check-dlo") {
      out.push_back(dlo_task(ctx, doc.distribution()));
    } else if (t.name == "check-mni") {
      out.push_back(mni_task(ctx, *doc.chart, doc.coframe_forms(), required_count(t, "k")));
    } else if (t.name == "check-amni") {
      std::vector<std::string> names = split_names(t.arg("omegas").value_or(""));
      const auto omegas = resolve_omegas(doc, names);
      out.push_back(amni_task(ctx, *doc.chart, doc.coframe_forms(), omegas, names, required_count(t, "k")));
    } else {
      throw InputError("unknown task '" + t.name + "'");
    }
  }
  return out;
}

Document load(const std::string& path, std::string& digest) {
  const std::string text = read_file(path);
  digest = sha256_hex(text);
  Document doc = parse_document(text);
  if (!doc.chart) throw InputError("'" + path + "' declares no coordinates");
  return doc;
}

Json error_json(const std::string& kind, const std::string& message) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

}  // namespace

RunResult run(const std::vector<std::string>& args, const std::optional<std::string>& env_seed) {
  RunResult result;
  std::ostringstream out;
  std::ostringstream err;

  CLI::App app{"Exact checks for tangent distributions and differential forms", "nonholonomy"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_opt;
  bool timings = false;
  app.add_option("--seed", seed_opt, "Seed for sampling (default: $NONHOLONOMY_SEED or 1)");
  app.add_flag("--timings", timings, "Add elapsed_ms to each task (breaks byte-stable output)");

  std::string file;
  std::string point;
  std::size_t k = 0;
  std::optional<std::size_t> n_opt;
  std::size_t n = 0;
  std::size_t samples = 1000;
  std::string omegas;
  std::string example;
  bool check = false;
  ProbeOptions probe;

  auto* flag = app.add_subcommand("flag", "Derived flag ranks at a point");
  flag->add_option("file", file, "Input document")->required();
  flag->add_option("--point", point, "Point as x=0,y=1/2 (missing coordinates are 0)");

  auto* dlo = app.add_subcommand("check-dlo", "Derived length one on the sample set");
  dlo->add_option("file", file, "Input document")->required();

  auto* mni = app.add_subcommand("check-mni", "Maximal non-integrability of the coframe");
  mni->add_option("file", file, "Input document")->required();
  mni->add_option("--k", k, "Rank is 2k+1")->required();

  auto* amni = app.add_subcommand("check-amni", "Almost maximal non-integrability with given 2-forms");
  amni->add_option("file", file, "Input document")->required();
  amni->add_option("--k", k, "Rank is 2k+1")->required();
  amni->add_option("--omegas", omegas, "Comma-separated 2-form names (default: the omegas statement)");

  auto* thin = app.add_subcommand("thinness", "Rank statistics of the singularity on random fibers");
  thin->add_option("--n", n, "Base dimension")->required();
  thin->add_option("--k", k, "Rank is 2k+1")->required();
  thin->add_option("--samples", samples, "Number of fibers")->capture_default_str();
  thin->add_flag("--condition", probe.condition_first_row, "For m = 1, adjust alpha so that B_1 vanishes");
  thin->add_option("--direction", probe.principal_direction, "Principal coordinate (0-based)")->capture_default_str();
  thin->add_option("--threads", probe.threads, "Worker threads (0 = all cores)");

  auto* ex = app.add_subcommand("example", "Build a built-in example");
  ex->add_option("name", example, "contact-M, even-contact-N, jet-canonical-K, example2-r5, prop-ori-nN-kK")->required();
  ex->add_flag("--check", check, "Run every applicable check");

  auto* ori = app.add_subcommand("verify-ori", "Power identity for the omegas built from a coordinate coframe");
  ori->add_option("--k", k, "Half the number of covectors minus one")->required();
  ori->add_option("--n", n_opt, "Ambient dimension (default 2k+1)");

  auto* runner = app.add_subcommand("run", "Execute the task statements of a document");
  runner->add_option("file", file, "Input document")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code != 0) {
      result.exit_code = kInputError;
      out << error_json("usage", e.what()).dump(2) << "\n";
    }
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  Context ctx;
  ctx.timings = timings;
  try {
    if (seed_opt) {
      ctx.seed = *seed_opt;
    } else if (env_seed) {
      ctx.seed = parse_seed(*env_seed);
    }

    std::string digest;
    std::vector<Json> tasks;
    if (flag->parsed()) {
      const Document doc = load(file, digest);
      tasks.push_back(flag_task(ctx, doc.distribution(), parse_point(*doc.chart, point)));
    } else if (dlo->parsed()) {
      const Document doc = load(file, digest);
      tasks.push_back(dlo_task(ctx, doc.distribution()));
    } else if (mni->parsed()) {
      const Document doc = load(file, digest);
      tasks.push_back(mni_task(ctx, *doc.chart, doc.coframe_forms(), k));
    } else if (amni->parsed()) {
      const Document doc = load(file, digest);
      std::vector<std::string> names = split_names(omegas);
      const auto forms = resolve_omegas(doc, names);
      tasks.push_back(amni_task(ctx, *doc.chart, doc.coframe_forms(), forms, names, k));
    } else if (thin->parsed()) {
      digest = sha256_hex("thinness n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " samples=" + std::to_string(samples) + " condition=" +
                          std::to_string(probe.condition_first_row) +
                          " direction=" + std::to_string(probe.principal_direction));
      tasks.push_back(thinness_task(ctx, n, k, samples, probe));
    } else if (ex->parsed()) {
      digest = sha256_hex("example " + example + (check ? " --check" : ""));
      tasks = example_tasks(ctx, example, check);
    } else if (ori->parsed()) {
      const std::size_t dim = n_opt.value_or(2 * k + 1);
      digest = sha256_hex("verify-ori k=" + std::to_string(k) + " n=" + std::to_string(dim));
      tasks.push_back(ori_task(ctx, k, dim));
      if (n_opt) {
        for (auto& t : example_tasks(ctx, ExampleId::prop_ori(dim, k).name(), true)) {
          if (t["task"] == "check-amni") tasks.push_back(std::move(t));
        }
      }
    } else if (runner->parsed()) {
      const Document doc = load(file, digest);
      tasks = document_tasks(ctx, doc);
    }

    Json report;
    report["tool_version"] = kToolVersion;
    report["input_digest"] = digest;
    report["seed"] = ctx.seed;
    report["tasks"] = tasks;
    out << report.dump(2) << "\n";
    result.exit_code = ctx.all_true ? kOk : kFalseVerdict;
  } catch (const ParseError& e) {
    Json j = error_json("parse", e.message());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    out << j.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const DegeneratePresentation& e) {
    Json j = error_json("input", e.what());
    out << j.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const InputError& e) {
    out << error_json("input", e.what()).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const std::exception& e) {
    out << error_json("consistency", e.what()).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    result.exit_code = kInternalError;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace nonholonomy::cli
