#include "qcancel/cli.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qcancel/errors.hpp"
#include "qcancel/report.hpp"
#include "qcancel/ring_spec.hpp"

namespace qcancel {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 0xf];
  }
  return out;
}

namespace {

int env_bound(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 64) throw InputError(std::string(name) + ": expected an integer in 1..64");
  return static_cast<int>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<TSetResult> all_t_sets(const Ring& ring) {
  std::vector<TSetResult> out;
  for (std::size_t s = 0; s < ring.generator_count(); ++s) out.push_back(t_set(ring, s));
  return out;
}

json t_sets_json(const std::vector<TSetResult>& ts, const Ring& ring) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(t_set_json(t, ring));
  return out;
}

std::size_t generator_arg(const RunSettings& s, const Ring& ring) {
  if (!s.generator) throw UsageError("this command needs --generator");
  if (*s.generator < 1 || *s.generator > ring.generator_count())
    throw UsageError("--generator must lie in 1.." + std::to_string(ring.generator_count()));
  return *s.generator - 1;
}

json verify_all(const HigherDerivation& d, const RunSettings& s) {
  const VerifyBounds b{s.degree_bound, s.index_bound};
  const Ring& ring = d.ring();
  auto leibniz = verify_higher_leibniz(d, b);
  auto iterative = verify_iterative(d, b);
  auto nilpotent = verify_locally_nilpotent(d, b);
  return json{{"higher_leibniz", verification_json(leibniz, ring)},
              {"iterative", verification_json(iterative, ring)},
              {"locally_nilpotent", verification_json(nilpotent, ring)},
              {"passed", leibniz.passed && iterative.passed && nilpotent.passed}};
}

bool commutes_with_all(const SkewPresentation& s, std::size_t i) {
  for (std::size_t j = 0; j < s.size(); ++j)
    if (!s.param(i, j).is_identity()) return false;
  return true;
}

json witness_command(const RingHandle& ring, const RunSettings& s) {
  const std::size_t gen = generator_arg(s, *ring);
  auto t = t_set(*ring, gen);
  if (t.empty())
    throw UnsupportedError("T_s is empty for " + ring->names()[gen] +
                           ": the generator lies in ML^H and admits no witness");
  auto d = lnd_witness(ring, gen, *t.witness);
  json images = json::array();
  for (std::size_t i = 0; i < ring->generator_count(); ++i) {
    Monomial m(ring->generator_count(), 0);
    m[i] = 1;
    images.push_back(json{{"generator", ring->names()[i]}, {"d1", d.apply(1, m).to_string()}});
  }
  return json{{"ring", ring_summary_json(*ring)},
              {"t_set", t_set_json(t, *ring)},
              {"kind", to_string(d.kind())},
              {"d1_on_generators", std::move(images)},
              {"rule", "d_n(f x_s^m) = C(m, n) f (d_1 x_s)^n x_s^(m-n) for f free of x_s"}};
}

json verify_witness_command(const RingHandle& ring, const RunSettings& s) {
  auto skew = ring->as_skew();
  if (!skew) throw UnsupportedError("witness derivations are built for skew polynomial rings only");
  if (!skew->is_torsion()) throw NonTorsionError("witness derivations need root-of-unity parameters");
  std::vector<std::size_t> gens;
  if (s.generator) {
    gens.push_back(generator_arg(s, *ring));
  } else {
    for (std::size_t i = 0; i < ring->generator_count(); ++i) gens.push_back(i);
  }
  json list = json::array();
  bool all = true;
  for (auto g : gens) {
    auto t = t_set(*ring, g);
    if (!t.empty()) {
      auto result = verify_all(lnd_witness(ring, g, *t.witness), s);
      all = all && result["passed"].get<bool>();
      list.push_back(json{{"kind", to_string(DerivationKind::TSetWitness)},
                          {"generator", ring->names()[g]},
                          {"exponent", *t.witness},
                          {"verification", std::move(result)}});
    }
    if (commutes_with_all(*skew, g)) {
      auto result = verify_all(divided_power_derivation(ring, g), s);
      all = all && result["passed"].get<bool>();
      list.push_back(json{{"kind", to_string(DerivationKind::DividedPower)},
                          {"generator", ring->names()[g]},
                          {"exponent", nullptr},
                          {"verification", std::move(result)}});
    }
  }
  return json{{"ring", ring_summary_json(*ring)},
              {"degree_bound", s.degree_bound},
              {"index_bound", s.index_bound},
              {"derivations", std::move(list)},
              {"all_passed", all}};
}

json dispatch(const std::string& command, const RingHandle& ring, const RunSettings& s) {
  if (command == "center") return json{{"ring", ring_summary_json(*ring)}, {"center", center_json(center_lattice(ring))}};
  if (command == "tsets") return json{{"ring", ring_summary_json(*ring)}, {"t_sets", t_sets_json(all_t_sets(*ring), *ring)}};
  if (command == "ml") {
    auto ml = ml_h(*ring);
    return json{{"ring", ring_summary_json(*ring)}, {"ml", ml_json(ml, *ring)}, {"t_sets", t_sets_json(ml.t_sets, *ring)}};
  }
  if (command == "discriminant" || command == "effectiveness") {
    auto d = discriminant(ring);
    json out{{"ring", ring_summary_json(*ring)}, {"discriminant", discriminant_json(d, *ring)}};
    if (command == "effectiveness") {
      if (d.degenerate) throw UnsupportedError("the discriminant vanishes; effectiveness is undefined");
      out["effectiveness"] = effectiveness_json(classify_effectiveness(d.normalized, *ring));
    }
    return out;
  }
  if (command == "witness") return witness_command(ring, s);
  if (command == "verify-witness") return verify_witness_command(ring, s);
  if (command == "verdict") return verdict_json(analyze(ring));
  throw UsageError("unknown command '" + command + "'");
}

void emit(const json& doc, const std::string& format, const std::optional<std::string>& path, std::ostream& out) {
  const std::string body = format == "text" ? render_text(doc) : doc.dump(2) + "\n";
  if (!path) {
    out << body;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw InputError(*path + ": cannot write file");
  f << body;
}

json bless(const std::string& dir, const RunSettings& s) {
  if (!fs::is_directory(dir)) throw InputError(dir + ": not a directory");
  std::vector<fs::path> specs;
  const std::string suffix = ".ring.json";
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) specs.push_back(e.path());
  }
  std::sort(specs.begin(), specs.end());
  json written = json::array();
  for (const auto& p : specs) {
    const auto name = p.filename().string();
    const fs::path target = p.parent_path() / (name.substr(0, name.size() - suffix.size()) + ".report.json");
    auto doc = build_report("verdict", read_file(p.string()), s, name);
    std::ofstream f(target, std::ios::binary);
    if (!f) throw InputError(target.string() + ": cannot write file");
    f << doc.dump(2) << "\n";
    written.push_back(target.filename().string());
  }
  return json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}}, {"command", "bless"}, {"written", written}};
}

std::pair<std::string, int> classify(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return {"input", kExitInput};
  if (dynamic_cast<const UsageError*>(&e)) return {"usage", kExitInput};
  if (dynamic_cast<const NonTorsionError*>(&e)) return {"non-torsion", kExitUnsupported};
  if (dynamic_cast<const UnsupportedError*>(&e)) return {"unsupported", kExitUnsupported};
  if (dynamic_cast<const BoundExceededError*>(&e)) return {"bound-exceeded", kExitUnsupported};
  if (dynamic_cast<const InvalidWitnessError*>(&e)) return {"invalid-witness", kExitUnsupported};
  if (dynamic_cast<const DivisionByZeroError*>(&e)) return {"division-by-zero", kExitUnsupported};
  return {"internal", kExitInternal};
}

}  // namespace

RunSettings resolve_settings(const CliOptions& options) {
  RunSettings s;
  s.degree_bound = env_bound("QCANCEL_DEGREE_BOUND", s.degree_bound);
  s.index_bound = env_bound("QCANCEL_INDEX_BOUND", s.index_bound);
  if (options.degree_bound) s.degree_bound = *options.degree_bound;
  if (options.index_bound) s.index_bound = *options.index_bound;
  if (s.degree_bound < 1 || s.index_bound < 1) throw InputError("bounds must be positive");
  s.generator = options.generator;
  return s;
}

json build_report(const std::string& command, const std::string& spec_text, const RunSettings& settings,
                  const std::string& source) {
  auto ring = parse_ring_spec(spec_text, source);
  return json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"command", command},
              {"input", {{"sha256", sha256_hex(spec_text)}, {"ring_spec", emit_ring_spec(*ring)}}},
              {"result", dispatch(command, ring, settings)}};
}

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  const bool as_json = options.format != "text";
  try {
    if (options.format != "json" && options.format != "text")
      throw InputError("--format must be json or text");
    const RunSettings settings = resolve_settings(options);
    json doc = options.command == "bless"
                   ? bless(options.spec_path, settings)
                   : build_report(options.command, read_file(options.spec_path), settings, options.spec_path);
    emit(doc, options.format, options.out, out);
    return kExitOk;
  } catch (const std::exception& e) {
    const auto [kind, code] = classify(e);
    if (as_json) {
      json doc{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
               {"error", {{"kind", kind}, {"message", e.what()}}},
               {"exit_code", code}};
      out << doc.dump(2) << "\n";
    } else {
      err << kToolName << ": " << kind << " error: " << e.what() << "\n";
    }
    return code;
  }
}

}  // namespace qcancel
