#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "bwl/bwl.hpp"

namespace {

using namespace bwl;

constexpr int kExitInvalid = 2;
constexpr int kExitNoCertificate = 3;
constexpr int kExitVerification = 4;

struct Global {
  std::uint64_t seed = 0x5eed;
  std::string output;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ClassifyOptions classify_options(const Global& g) {
  ClassifyOptions opt;
  opt.see_saw.seed = g.seed;
  return opt;
}

std::optional<int> parse_sign(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "+1" || s == "1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw InvalidInput("--sign must be +1 or -1, got '" + s + "'");
}

struct GenArgs {
  int n = 0;
  std::vector<double> alpha;
  std::vector<double> phases;
  std::string sign;
  std::optional<std::uint64_t> orthogonal_seed;
  std::string named;
  int k = 2;
};

/// Torus witness with seeded phases; the circulant profile is then the image
/// of R = f^T a f under the orthogonal construction, which is re-checked.
WitnessRecord orthogonal_witness(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<double> phases(static_cast<std::size_t>(torus_phase_count(n)));
  for (double& p : phases) p = phase(rng);
  std::optional<int> sign;
  if (n % 2 == 0) sign = (rng() & 1) ? 1 : -1;
  WitnessRecord r = witness_from_torus(n, phases, sign);
  const StochasticProfile profile{circulant_profile(r.alpha)};
  const StochasticProfile rebuilt = profile_from_orthogonal(orthogonal_from_profile(profile));
  if ((rebuilt.a - profile.a).cwiseAbs().maxCoeff() > 1e-9)
    throw VerificationFailure("orthogonal reconstruction does not reproduce the circulant profile");
  r.provenance = Provenance::FromOrthogonal;
  return r;
}

WitnessRecord run_gen(const GenArgs& a) {
  const int groups = !a.alpha.empty() + !a.phases.empty() + a.orthogonal_seed.has_value() + !a.named.empty();
  if (groups != 1)
    throw InvalidInput("gen needs exactly one of --alpha, --phases, --orthogonal-seed, --named");
  if (!a.sign.empty() && a.phases.empty()) throw InvalidInput("--sign only applies to --phases");
  if (!a.alpha.empty()) {
    if (a.n && static_cast<int>(a.alpha.size()) != a.n)
      throw InvalidInput("--alpha has " + std::to_string(a.alpha.size()) + " entries but --n is " +
                         std::to_string(a.n));
    AlphaVector alpha(a.alpha);
    require_dim(alpha.n());
    return make_record(std::move(alpha), Provenance::FromAlpha);
  }
  if (a.n == 0) throw InvalidInput("--n is required");
  if (!a.phases.empty()) return witness_from_torus(a.n, a.phases, parse_sign(a.sign));
  if (a.orthogonal_seed) return orthogonal_witness(a.n, *a.orthogonal_seed);
  return named_witness(a.named, a.n, a.k);
}

WitnessRecord load_record(const std::string& path) { return record_from_json(read_json_file(path)); }

std::string run_certify(const std::string& path, std::optional<int> k, std::optional<double> eps, const Global& g) {
  const WitnessRecord rec = load_record(path);
  CertifyOptions opt;
  opt.k = k;
  opt.epsilon = eps;
  opt.classify = classify_options(g);
  const Certificate cert = certify(rec.alpha, opt);
  const Json j = certificate_to_json(cert, rec.matrix);
  // what is written must re-check from the serialized text alone
  const CertificateCheck check = verify_certificate_json(Json::parse(j.dump()));
  if (!check.ok) throw VerificationFailure("emitted " + check.type + " certificate fails its re-check: " + check.detail);
  return dump(j);
}

std::string figure1_circle(int count) {
  std::string s = "phi,a,b,c\n";
  for (const auto& p : ellipse_points(count))
    s += format_double(p.phi) + "," + format_double(p.a) + "," + format_double(p.b) + "," + format_double(p.c) + "\n";
  return s;
}

std::string figure1_ellipse(int count) {
  std::string s = "phi,b,c\n";
  for (const auto& p : ellipse_points(count))
    s += format_double(p.phi) + "," + format_double(p.b) + "," + format_double(p.c) + "\n";
  return s;
}

std::string figure1_marked() {
  std::string s = "label,phi,a,b,c\n";
  for (const auto& p : marked_points())
    s += p.label + "," + format_double(p.phi) + "," + format_double(p.a) + "," + format_double(p.b) + "," +
         format_double(p.c) + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-diagonal entanglement witnesses: construct, classify, certify, scan"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "seed for every randomized routine (env BWL_SEED overrides)");
  app.add_option("-o,--output", g.output, "output path (stdout when absent)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a witness record");
  gen_cmd->add_option("--n", gen.n, "dimension n >= 2");
  gen_cmd->add_option("--alpha", gen.alpha, "alpha_0 ... alpha_{n-1}")->delimiter(',');
  gen_cmd->add_option("--phases", gen.phases, "torus phases phi_1 ... phi_m")->delimiter(',');
  gen_cmd->add_option("--sign", gen.sign, "c_{n/2} for even n: +1 or -1");
  gen_cmd->add_option("--orthogonal-seed", gen.orthogonal_seed, "seeded member of the orthogonal family");
  gen_cmd->add_option("--named", gen.named, "reduction, wprime, choi-I, choi-II, non-torus");
  gen_cmd->add_option("--k", gen.k, "parameter of the non-torus family");

  std::string input;
  std::optional<int> cert_k;
  std::optional<double> cert_eps;
  auto* classify_cmd = app.add_subcommand("classify", "positivity verdict for a record");
  classify_cmd->add_option("record", input, "witness record JSON")->required();
  auto* certify_cmd = app.add_subcommand("certify", "decomposition, PPT or product certificate");
  certify_cmd->add_option("record", input, "witness record JSON")->required();
  certify_cmd->add_option("--k", cert_k, "index of the PPT certificate");
  certify_cmd->add_option("--epsilon", cert_eps, "epsilon of the PPT certificate");
  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("certificate", input, "certificate JSON")->required();

  ScanOptions scan;
  std::string scan_sign;
  auto* scan_cmd = app.add_subcommand("scan", "classify a lattice of torus phases");
  scan_cmd->add_option("--n", scan.n, "dimension")->required();
  scan_cmd->add_option("--grid", scan.grid, "lattice points per phase")->required();
  scan_cmd->add_option("--sign", scan_sign, "even n: restrict to one class");
  scan_cmd->add_option("--jobs", scan.jobs, "worker threads");

  int figure_count = 360;
  std::string figure_dir = ".";
  auto* figure_cmd = app.add_subcommand("figure1", "circle, ellipse and marked points as CSV");
  figure_cmd->add_option("--count", figure_count, "samples along the circle");
  figure_cmd->add_option("--out-dir", figure_dir, "directory for circle.csv, ellipse.csv, marked.csv");

  int profile_n = 0;
  std::uint64_t profile_seed = 0;
  auto* profile_cmd = app.add_subcommand("profile", "profile a = (n-1)/n J + f R f^T for a Haar R");
  profile_cmd->add_option("--n", profile_n, "dimension")->required();
  profile_cmd->add_option("--seed", profile_seed, "seed of R")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (const char* env = std::getenv("BWL_SEED")) {
      try {
        g.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw InvalidInput(std::string("BWL_SEED is not an integer: '") + env + "'");
      }
    }

    if (*gen_cmd) {
      emit(dump(to_json(run_gen(gen))), g.output);
    } else if (*classify_cmd) {
      emit(dump(to_json(classify(load_record(input).alpha, classify_options(g)))), g.output);
    } else if (*certify_cmd) {
      emit(run_certify(input, cert_k, cert_eps, g), g.output);
    } else if (*verify_cmd) {
      const CertificateCheck c = verify_certificate_json(read_json_file(input));
      std::cout << c.type << (c.ok ? " certificate verified: " : " certificate FAILED: ") << c.detail << "\n";
      if (!c.ok) return kExitVerification;
    } else if (*scan_cmd) {
      scan.sign = parse_sign(scan_sign);
      scan.classify = classify_options(g);
      emit(scan_csv(scan.n, torus_scan(scan)), g.output);
    } else if (*figure_cmd) {
      std::filesystem::create_directories(figure_dir);
      const std::filesystem::path dir(figure_dir);
      emit(figure1_circle(figure_count), (dir / "circle.csv").string());
      emit(figure1_ellipse(figure_count), (dir / "ellipse.csv").string());
      emit(figure1_marked(), (dir / "marked.csv").string());
    } else if (*profile_cmd) {
      require_dim(profile_n);
      emit(dump(to_json(profile_from_orthogonal(random_orthogonal(profile_n - 1, profile_seed)))), g.output);
    }
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NoCertificate& e) {
    std::cerr << "no certificate: " << e.what() << " (margin " << format_double(e.margin()) << ")\n";
    return kExitNoCertificate;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}
