// Command line front end: validate surface documents, build witnesses, run
// the clearing pipeline, verify certificates, and generate test fibers.
// Exit codes: 0 success, 1 semantic failure, 2 I/O or usage problems.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibral/avoidance.hpp"
#include "fibral/clearing.hpp"
#include "fibral/error.hpp"
#include "fibral/kodaira.hpp"
#include "fibral/serialization.hpp"
#include "fibral/surface.hpp"
#include "fibral/witness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kUsageFailure = 2;

int classify(const fibral::Error& error) {
  switch (error.code()) {
    case fibral::ErrorCode::ParseError:
    case fibral::ErrorCode::DuplicateIdentifier:
    case fibral::ErrorCode::NonRationalNumeral:
    case fibral::ErrorCode::IoError:
    case fibral::ErrorCode::UsageError:
      return kUsageFailure;
    default:
      return kSemanticFailure;
  }
}

fibral::ChoiceMap build_choice(const fibral::SurfaceModel& surface,
                               const std::vector<std::string>& assignments) {
  // Default: the first component of every reducible fiber.
  fibral::ChoiceMap choice;
  for (const std::string& place : fibral::reducible_places(surface))
    choice.choices[place] = surface.place(place).components.front().id;
  for (const std::string& text : assignments) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
      throw fibral::Error(fibral::ErrorCode::UsageError,
                          "--choice expects place=component, got '" + text + "'");
    choice.choices[text.substr(0, eq)] = text.substr(eq + 1);
  }
  return choice;
}

int run_validate(const std::string& surface_path) {
  fibral::SurfaceModel surface = fibral::load_surface_file(surface_path);
  fibral::Report report = fibral::validate_surface(surface);
  std::cout << report.format();
  if (!report.all_passed()) {
    std::cout << "invalid: " << report.failure_count() << " check(s) failed\n";
    return kSemanticFailure;
  }
  std::cout << "valid\n";
  return kOk;
}

int run_synthesize(const std::string& surface_path, const std::vector<std::string>& assignments,
                   std::int64_t n, const std::string& out_path) {
  fibral::SurfaceModel surface = fibral::load_surface_file(surface_path);
  fibral::ChoiceMap choice = build_choice(surface, assignments);
  fibral::Witness witness = fibral::synthesize_witness(surface, choice, fibral::Integer(n));
  fibral::Report report = fibral::verify_witness(surface, witness);
  if (!report.all_passed()) {
    std::cerr << report.format();
    std::cerr << "synthesized witness failed verification\n";
    return kSemanticFailure;
  }
  const std::string text = fibral::witness_to_text(witness);
  if (out_path.empty())
    std::cout << text;
  else
    fibral::write_text_file(out_path, text);
  std::cerr << "witness degree " << fibral::to_string(witness.degree) << ", "
            << witness.vertical.size() << " vertical part(s)\n";
  return kOk;
}

int run_clear(const std::string& surface_path, std::string out_path, std::uint64_t max_width) {
  fibral::SurfaceModel surface = fibral::load_surface_file(surface_path);
  fibral::ClearOptions options;
  options.max_width = max_width;
  const std::size_t width = fibral::recursion_width(surface, {});
  fibral::MorphismCertificate cert = fibral::prove_theorem(surface, options);
  if (out_path.empty()) out_path = surface_path + ".cert.json";
  fibral::write_text_file(out_path, fibral::certificate_to_text(cert));
  std::cout << "surface: " << surface.name << "\n"
            << "places cleared: " << fibral::reducible_places(surface).size() << "\n"
            << "recursion width: " << width << "\n"
            << "final degree: " << fibral::to_string(cert.degree) << "\n"
            << "certificate: " << out_path << "\n";
  return kOk;
}

int run_verify(const std::string& surface_path, const std::string& cert_path) {
  fibral::SurfaceModel surface = fibral::load_surface_file(surface_path);
  fibral::MorphismCertificate cert = fibral::certificate_from_file(cert_path);
  fibral::ReplayResult result = fibral::replay_certificate(surface, cert);
  if (!result.ok) {
    std::cout << "divergence at step " << result.step_index << " (" << result.op
              << "): " << result.detail << "\n";
    return kSemanticFailure;
  }
  std::cout << "verified: " << result.steps_checked << " step(s) replayed, final degree "
            << fibral::to_string(cert.degree) << "\n";
  return kOk;
}

int run_gen_fiber(const std::string& type, std::int64_t n, const std::string& place_id) {
  if (n < 0) throw fibral::Error(fibral::ErrorCode::UsageError, "--n must be nonnegative");
  fibral::FiberModel fiber =
      fibral::make_kodaira_fiber(type, static_cast<std::size_t>(n), place_id);
  std::cout << fibral::serialize_fiber_fragment(fiber);
  return kOk;
}

std::vector<fibral::ProjectivePoint> load_points(unsigned q, unsigned m,
                                                 const std::string& path) {
  const std::string text = fibral::read_text_file(path);
  std::vector<fibral::ProjectivePoint> points;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream fields(line);
    std::vector<long long> raw;
    long long value = 0;
    while (fields >> value) raw.push_back(value);
    if (!fields.eof())
      throw fibral::Error(fibral::ErrorCode::ParseError,
                          path + ":" + std::to_string(number) + ": expected integers");
    if (raw.size() != m + 1)
      throw fibral::Error(fibral::ErrorCode::ParseError,
                          path + ":" + std::to_string(number) + ": expected " +
                              std::to_string(m + 1) + " coordinates");
    points.push_back(fibral::make_projective_point(q, raw));
  }
  return points;
}

int run_avoid(unsigned q, unsigned m, const std::string& points_path) {
  std::vector<fibral::ProjectivePoint> points = load_points(q, m, points_path);
  fibral::HomogeneousForm form = fibral::find_avoiding_form(q, m, points);
  std::cout << "points: " << points.size() << "\n"
            << "degree: " << form.degree << "\n"
            << "form: " << fibral::to_string(form) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for fibered-surface divisor arithmetic"};
  app.require_subcommand(1);

  std::string surface_path, cert_path, out_path, fiber_type = "I_n", place_id = "v";
  std::string points_path;
  std::vector<std::string> assignments;
  std::int64_t n = 1;
  std::int64_t fiber_n = 2;
  std::uint64_t max_width = 1'000'000;
  unsigned q = 2, m = 1;

  CLI::App* validate = app.add_subcommand("validate", "check a surface document");
  validate->add_option("surface", surface_path, "surface document")->required();

  CLI::App* synthesize = app.add_subcommand("synthesize", "build and verify one witness");
  synthesize->add_option("surface", surface_path, "surface document")->required();
  synthesize->add_option("--choice", assignments, "place=component assignment (repeatable)");
  synthesize->add_option("--n", n, "positive multiple of the base profile")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--out", out_path, "write the witness here instead of stdout");

  CLI::App* clear = app.add_subcommand("clear", "run the full clearing pipeline");
  clear->add_option("surface", surface_path, "surface document")->required();
  clear->add_option("--out", out_path, "certificate path (default: <surface>.cert.json)");
  clear->add_option("--max-width", max_width, "recursion width guard");

  CLI::App* verify = app.add_subcommand("verify", "replay a certificate against its surface");
  verify->add_option("surface", surface_path, "surface document")->required();
  verify->add_option("certificate", cert_path, "certificate file")->required();

  CLI::App* gen = app.add_subcommand("gen-fiber", "emit a standard fiber fragment");
  gen->add_option("--type", fiber_type, "I_n or I0*")->required();
  gen->add_option("--n", fiber_n, "cycle length for I_n (>= 2)");
  gen->add_option("--place", place_id, "place identifier for the fragment");

  CLI::App* avoid = app.add_subcommand("avoid", "find a form nonvanishing on given points");
  avoid->add_option("--q", q, "field size (prime <= 13)")->required();
  avoid->add_option("--m", m, "projective dimension (1..3)")->required();
  avoid->add_option("--points", points_path, "file with one point per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageFailure;
  }

  try {
    if (validate->parsed()) return run_validate(surface_path);
    if (synthesize->parsed()) return run_synthesize(surface_path, assignments, n, out_path);
    if (clear->parsed()) return run_clear(surface_path, out_path, max_width);
    if (verify->parsed()) return run_verify(surface_path, cert_path);
    if (gen->parsed()) return run_gen_fiber(fiber_type, fiber_n, place_id);
    if (avoid->parsed()) return run_avoid(q, m, points_path);
  } catch (const fibral::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticFailure;
  }
  return kUsageFailure;
}
