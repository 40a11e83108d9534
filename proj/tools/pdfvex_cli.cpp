// Command-line front end: parse PDFs into manifests, score manifests
// against reference annotations, generate the synthetic fixture corpus.
//
// Exit codes: 0 success, 1 unusable input (missing/odd files, bad config,
// page-count mismatch), 2 unexpected internal failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pdfvex/fixtures/corpus.hpp"
#include "pdfvex/metrics.hpp"
#include "pdfvex/pdf/backend.hpp"
#include "pdfvex/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;

struct ParseOptions {
  std::vector<std::string> inputs;
  std::string config_path;
  std::string out_dir;
  bool stub_providers = false;
  int jobs = 0;
};

struct EvalOptions {
  std::string manifest_path;
  std::string gt_path;
  std::string out_path;
  std::string config_path;
  bool stub_providers = false;
};

struct CorpusOptions {
  std::uint32_t seed = 0;
  std::string out_dir;
};

pdfvex::PipelineConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return pdfvex::PipelineConfig{};
  return pdfvex::PipelineConfig::load(path);
}

/// Output directory for one input document. A single input writes straight
/// into out_dir; several inputs get per-document subdirectories named after
/// the file stem (deduplicated with a numeric suffix).
std::vector<fs::path> plan_output_dirs(const std::vector<std::string>& inputs,
                                       const fs::path& out_dir) {
  std::vector<fs::path> dirs;
  if (inputs.size() == 1) {
    dirs.push_back(out_dir);
    return dirs;
  }
  std::set<std::string> taken;
  for (const std::string& input : inputs) {
    std::string stem = fs::path(input).stem().string();
    if (stem.empty()) stem = "document";
    std::string name = stem;
    for (int n = 2; taken.count(name); ++n)
      name = stem + "_" + std::to_string(n);
    taken.insert(name);
    dirs.push_back(out_dir / name);
  }
  return dirs;
}

int run_parse(const ParseOptions& opt) {
  pdfvex::PipelineConfig cfg;
  try {
    cfg = load_config_or_default(opt.config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: config %s: %s\n", opt.config_path.c_str(),
                 e.what());
    return kInputError;
  }
  if (opt.stub_providers) cfg.provider = "stub";
  if (opt.jobs > 0) cfg.jobs = opt.jobs;

  bool missing = false;
  for (const std::string& input : opt.inputs)
    if (!fs::is_regular_file(input)) {
      std::fprintf(stderr, "error: no such file: %s\n", input.c_str());
      missing = true;
    }
  if (missing) return kInputError;

  pdfvex::OwnedProviders owned;
  try {
    owned = pdfvex::make_providers(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: provider setup: %s\n", e.what());
    return kInputError;
  }
  const pdfvex::PipelineProviders providers = owned.view();

  const std::vector<fs::path> out_dirs =
      plan_output_dirs(opt.inputs, opt.out_dir);

  // With several documents the --jobs budget is spent across documents and
  // each pipeline run stays single-threaded; with one document the pipeline
  // parallelizes across pages itself.
  pdfvex::PipelineConfig doc_cfg = cfg;
  std::size_t doc_workers = 1;
  if (opt.inputs.size() > 1) {
    doc_cfg.jobs = 1;
    const std::size_t budget =
        cfg.jobs > 0 ? static_cast<std::size_t>(cfg.jobs)
                     : std::max(1u, std::thread::hardware_concurrency());
    doc_workers = std::min(budget, opt.inputs.size());
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{kOk};
  std::mutex io_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < opt.inputs.size();
         i = next.fetch_add(1)) {
      const std::string& input = opt.inputs[i];
      const fs::path& dir = out_dirs[i];
      int status = kOk;
      std::string message;
      try {
        const pdfvex::DocumentManifest manifest =
            pdfvex::run_pipeline_file(input, doc_cfg, providers);
        fs::create_directories(dir);
        pdfvex::save_manifest((dir / "manifest.json").string(), manifest);
        pdfvex::write_element_rasters(manifest, dir.string());
      } catch (const pdfvex::PdfError& e) {
        status = kInputError;
        message = e.what();
      } catch (const std::exception& e) {
        status = kInternalError;
        message = e.what();
      }
      std::lock_guard<std::mutex> lock(io_mutex);
      if (status == kOk) {
        std::printf("%s -> %s\n", input.c_str(),
                    (dir / "manifest.json").string().c_str());
      } else {
        std::fprintf(stderr, "error: %s: %s\n", input.c_str(),
                     message.c_str());
        int prev = worst.load();
        while (prev < status && !worst.compare_exchange_weak(prev, status)) {
        }
      }
    }
  };

  if (doc_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < doc_workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  return worst.load();
}

int run_eval(const EvalOptions& opt) {
  for (const std::string& path : {opt.manifest_path, opt.gt_path})
    if (!fs::is_regular_file(path)) {
      std::fprintf(stderr, "error: no such file: %s\n", path.c_str());
      return kInputError;
    }

  pdfvex::PipelineConfig cfg;
  pdfvex::DocumentManifest manifest;
  pdfvex::GroundTruth gt;
  try {
    cfg = load_config_or_default(opt.config_path);
    manifest = pdfvex::load_manifest(opt.manifest_path);
    gt = pdfvex::load_ground_truth(opt.gt_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  if (opt.stub_providers) cfg.provider = "stub";

  if (manifest.pages.size() != gt.pages.size()) {
    std::fprintf(stderr,
                 "error: page count mismatch: manifest has %zu, reference "
                 "has %zu\n",
                 manifest.pages.size(), gt.pages.size());
    return kInputError;
  }

  try {
    pdfvex::OwnedProviders owned = pdfvex::make_providers(cfg);
    const pdfvex::EvalInput input = pdfvex::manifest_to_eval_input(manifest);
    const pdfvex::EvalReport report =
        pdfvex::evaluate(input, gt, owned.view().embedder, cfg.match_iou);
    pdfvex::save_report(opt.out_path, report);
    std::printf("%s\n", pdfvex::report_to_json(report).c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternalError;
  }
  return kOk;
}

int run_gen_corpus(const CorpusOptions& opt) {
  try {
    const pdfvex::fixtures::Corpus corpus =
        pdfvex::fixtures::build_corpus(opt.seed);
    pdfvex::fixtures::write_corpus(corpus, opt.out_dir);
    std::printf("%zu documents -> %s\n", corpus.docs.size(),
                opt.out_dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDF visual-element extraction pipeline"};
  app.require_subcommand(1);

  ParseOptions parse_opt;
  CLI::App* parse = app.add_subcommand(
      "parse", "Extract elements from PDFs and write manifests");
  parse->add_option("pdfs", parse_opt.inputs, "Input PDF files")
      ->required()
      ->expected(-1);
  parse->add_option("--config", parse_opt.config_path,
                    "Pipeline configuration JSON");
  parse->add_option("--out", parse_opt.out_dir, "Output directory")
      ->required();
  parse->add_flag("--stub-providers", parse_opt.stub_providers,
                  "Force in-process providers (no network)");
  parse->add_option("--jobs", parse_opt.jobs,
                    "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand(
      "eval", "Score a manifest against reference annotations");
  eval->add_option("--manifest", eval_opt.manifest_path, "Manifest JSON")
      ->required();
  eval->add_option("--gt", eval_opt.gt_path, "Reference annotation JSON")
      ->required();
  eval->add_option("--out", eval_opt.out_path, "Report output path")
      ->required();
  eval->add_option("--config", eval_opt.config_path,
                   "Pipeline configuration JSON");
  eval->add_flag("--stub-providers", eval_opt.stub_providers,
                 "Force in-process providers (no network)");

  CorpusOptions corpus_opt;
  CLI::App* gen = app.add_subcommand(
      "gen-corpus", "Generate the synthetic fixture corpus");
  gen->add_option("--seed", corpus_opt.seed, "Corpus seed");
  gen->add_option("--out", corpus_opt.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  if (parse->parsed()) return run_parse(parse_opt);
  if (eval->parsed()) return run_eval(eval_opt);
  if (gen->parsed()) return run_gen_corpus(corpus_opt);
  return kInputError;
}
