#include "bianchi/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  return 0;
}

bianchi::MoebiusElt named_element(const bianchi::RingBasis& r, const std::string& name) {
  if (name == "beta") return bianchi::standard_beta(r);
  if (name == "gamma") return bianchi::standard_gamma(r);
  if (name == "alpha") return bianchi::alpha_for_m2(r);
  throw std::invalid_argument("unknown element " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifold cohomology of Bianchi groups PSL_2(O_-m) with units +-1"};
  app.require_subcommand(0, 1);

  bianchi::RunConfig cfg;
  std::string format = "json", out_path, cache_dir;
  app.add_option("--m", cfg.m_list, "square-free m > 0, m != 1, 3 (repeatable)")->check(CLI::PositiveNumber);
  app.add_flag("--verify", cfg.verify, "run the Swan stability, centraliser and Pell cross-checks");
  app.add_option("--dioph-bound", cfg.dioph_bound, "coefficient bound of the centraliser searches")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--norm-ceiling", cfg.norm_ceiling, "largest norm bound tried for the floor")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", cache_dir, "directory for cached floors");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--out", out_path, "write the report to this file");

  auto* cent = app.add_subcommand("centralizer", "centraliser search for one element");
  long cm = 2;
  std::string element;
  std::vector<long> matrix;
  std::int64_t bound = 50;
  cent->add_option("--m", cm, "square-free m")->required();
  auto* el = cent->add_option("--element", element, "named element")->check(CLI::IsMember({"beta", "gamma", "alpha"}));
  auto* mx = cent->add_option("--matrix", matrix, "a0 a1 b0 b1 c0 c1 d0 d1: [[a, b], [c, d]], x = x0 + x1 w")
                 ->expected(8);
  el->excludes(mx);
  cent->add_option("--bound", bound, "coefficient bound")->capture_default_str()->check(CLI::NonNegativeNumber);
  cent->add_option("--norm-ceiling", cfg.norm_ceiling, "largest norm bound tried for the floor")->capture_default_str();
  cent->add_option("--cache", cache_dir, "directory for cached floors");
  cent->add_option("--out", out_path, "write the result to this file");

  CLI11_PARSE(app, argc, argv);
  if (!cache_dir.empty()) cfg.cache_dir = cache_dir;

  try {
    if (cent->parsed()) {
      if (element.empty() && matrix.empty()) throw std::invalid_argument("give --element or --matrix");
      bianchi::RingBasis r = bianchi::RingBasis::for_m(cm);
      bianchi::MoebiusElt g;
      std::string name = element;
      if (!element.empty()) {
        g = named_element(r, element);
      } else {
        auto e = [&](int i) { return bianchi::RingElem(r, matrix[2 * i], matrix[2 * i + 1]); };
        if (!(e(0) * e(3) - e(1) * e(2) == bianchi::RingElem(r, 1, 0)))
          throw std::invalid_argument("matrix does not have determinant 1");
        g = bianchi::MoebiusElt(e(0), e(1), e(2), e(3));
        name = "matrix";
      }
      cfg.dioph_bound = bound;
      auto res = bianchi::centraliser_run(cm, name, g, cfg);
      int rc = emit(res.json, out_path);
      return rc != 0 ? rc : (res.ok ? 0 : 1);
    }

    if (cfg.m_list.empty()) {
      std::cerr << "error: give at least one --m\n";
      return 2;
    }
    cfg.format = format == "text" ? bianchi::OutputFormat::Text : bianchi::OutputFormat::Json;
    auto reports = bianchi::run(cfg);
    bool ok = true;
    std::string text;
    for (const auto& r : reports) {
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      if (!r.error.empty()) std::cerr << "error: m = " << r.orb.m << ": " << r.error << "\n";
      ok = ok && r.ok();
      if (cfg.format == bianchi::OutputFormat::Text) text += bianchi::report_text(r);
    }
    if (cfg.format == bianchi::OutputFormat::Json) text = bianchi::reports_json(reports);
    int rc = emit(text, out_path);
    return rc != 0 ? rc : (ok ? 0 : 1);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
