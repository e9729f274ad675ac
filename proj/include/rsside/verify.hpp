#pragma once

#include <cstdint>
#include <string>

#include "rsside/serialize.hpp"

namespace rsside {

// Outcome of one cross-module property suite. On failure `counterexample`
// names the first offending instance.
struct SuiteResult {
  std::string suite;
  bool pass = false;
  std::uint64_t checked = 0;
  std::string detail;
  json counterexample;
};

json to_json(const SuiteResult& r);

// Rank bandwidth vs intersection formula on `trials` random (S, T, W).
SuiteResult verify_lemma2(unsigned q, unsigned ell, unsigned trials, std::uint64_t seed);
// dim(gamma F_{q^a} cap delta F_{q^b}) <= 1 for all coprime divisor pairs a, b of ell.
SuiteResult verify_lemma3(unsigned q, unsigned ell);
// Exhaustive optimum identical across every side-information subspace of each size.
SuiteResult verify_prop2(unsigned q, unsigned ell, std::size_t n, std::size_t k);
// {0,1}-profile subspaces maximize the coset dimension sum among m-dim W.
SuiteResult verify_majorization(unsigned q, unsigned ell, unsigned a, unsigned m);
// Validity, bandwidth and lower bound of a scheme file.
SuiteResult verify_scheme_file(const std::string& path);

}  // namespace rsside
