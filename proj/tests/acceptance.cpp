// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fibset/suites.hpp"

using namespace fibset;

namespace {

const std::vector<std::string> kScope{"cyclic:1", "cyclic:2", "cyclic:3", "klein4", "symmetric:3"};
const std::vector<std::string> kMiddle{"cyclic:2", "cyclic:3", "klein4"};
const std::vector<std::string> kFibers{"trivial", "z2", "z3"};
const std::vector<std::string> kElls{"identity", "one", "generic"};

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  // Runs one suite and folds it into the verdict.
  SuiteResult run(const std::string& suite, RunConfig c, const std::string& label = "") {
    c.suites = {suite};
    const auto r = run_suite(suite, c);
    ok = ok && r.passed();
    detail << (detail.tellp() > 0 ? "; " : "") << suite << (label.empty() ? "" : "[" + label + "]") << " "
           << r.checked << (r.passed() ? " ok" : (r.skipped ? " skipped" : " FAILED"));
    if (r.witness) detail << " witness=" << r.witness->dump();
    return r;
  }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "; " << what;
    }
  }
};

RunConfig scope(std::vector<std::string> groups, std::vector<std::string> middle, std::string fiber = "z2",
                std::string ell = "generic") {
  RunConfig c;
  c.groups = std::move(groups);
  c.middle_groups = std::move(middle);
  c.fiber = std::move(fiber);
  c.ell = std::move(ell);
  return c;
}

Verdict lemma42() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto r = v.run("lemma42", scope(kScope, {}));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(r.checked >= 10000, "fewer than 10^4 cases");
  v.require(secs < 60, "took longer than a minute");
  v.detail << " in " << static_cast<int>(secs * 1000) << " ms";
  return v;
}

Verdict lemma41() {
  Verdict v;
  v.run("lemma41", scope(kScope, {}));
  return v;
}

Verdict prop43() {
  Verdict v;
  v.run("prop43", scope(kScope, kMiddle, "z2"));
  return v;
}

Verdict cocycle() {
  Verdict v;
  for (const auto& a : kFibers)
    for (const auto& ell : kElls) v.run("cocycle", scope(kScope, kMiddle, a, ell), a + "," + ell);
  return v;
}

Verdict thm44() {
  Verdict v;
  const auto r = v.run("thm44", scope(kMiddle, kMiddle, "z2", "generic"));
  v.require(r.parts.count("fast_vs_oracle") && r.parts.at("fast_vs_oracle") > 0, "no basis pairs compared");
  return v;
}

Verdict thm51() {
  Verdict v;
  const auto r = v.run("thm51", scope({"cyclic:2"}, {}, "z2", "generic"), "C2");
  const auto triples = r.parts.count("associativity") ? r.parts.at("associativity") : 0;
  v.require(triples == 1331, "expected 1331 triples on C2, got " + std::to_string(triples));
  v.detail << " (" << triples << " triples)";
  v.run("thm51", scope({"cyclic:2", "cyclic:3"}, {}, "z2", "generic"), "C2,C3");
  v.run("nu", scope(kScope, {}, "z2", "generic"));
  return v;
}

Verdict cor52() {
  Verdict v;
  for (const auto& a : kFibers) v.run("cor52", scope(kScope, {}, a, "identity"), a);
  return v;
}

Verdict section3() {
  Verdict v;
  const std::vector<std::string> groups{"cyclic:2", "cyclic:3", "symmetric:3"};
  v.run("lemma31", scope(groups, {}));
  v.run("prop32", scope(groups, {}));
  return v;
}

Verdict specialize() {
  Verdict v;
  for (const auto& a : kFibers) v.run("specialize", scope(kScope, {}, a, "generic"), a);
  return v;
}

Verdict determinism() {
  Verdict v;
  auto c = scope({"cyclic:1", "cyclic:2", "cyclic:3"}, {}, "z2", "generic");
  c.seed = 17;
  const auto a = report_to_json(run_suites(c)).dump();
  const auto b = report_to_json(run_suites(c)).dump();
  v.require(a == b, "reports differ");
  v.detail << a.size() << " bytes, " << (a == b ? "identical" : "different");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 subgroup pair counting identity over the default scope", lemma42},
      {"2 intersection order identity on triples with |FxG| <= 36", lemma41},
      {"3 matching conditions and triple composites, A = Z/2", prop43},
      {"4 ell-cocycle audit for every fiber and ell", cocycle},
      {"5 double coset formula equals the oracle over C2, C3, C2xC2", thm44},
      {"6 fibred associativity (1331 triples on C2, all of C2/C3) and nu functoriality", thm51},
      {"7 classical structure constants are counts and the rescaling intertwines", cor52},
      {"8 class function convolution and mu", section3},
      {"9 generic tables specialize to the identity and one tables", specialize},
      {"10 reports are byte-identical across runs", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << "error: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1f s]\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !v.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
