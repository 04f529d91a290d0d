#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nonholonomy/distributions.hpp"
#include "nonholonomy/forms.hpp"

namespace nonholonomy {

/// Identifier of a built-in distribution. Names round-trip through parse():
///   contact-M, even-contact-N, jet-canonical-K, example2-r5, prop-ori-nN-kK.
struct ExampleId {
  enum class Kind { Contact, EvenContact, JetCanonical, Example2R5, PropOri };

  Kind kind = Kind::Contact;
  /// m for contact, n for even-contact and prop-ori, k for jet-canonical.
  std::size_t param = 1;
  /// k for prop-ori.
  std::size_t k = 0;
  /// prop-ori only: constant annihilating coframe of the distribution; the
  /// coordinate covectors dx_{2k+2}..dx_n when absent.
  std::optional<std::vector<DiffForm>> coframe;

  static ExampleId contact(std::size_t m);
  static ExampleId even_contact(std::size_t n);
  static ExampleId jet_canonical(std::size_t k);
  static ExampleId example2_r5();
  static ExampleId prop_ori(std::size_t n, std::size_t k, std::optional<std::vector<DiffForm>> coframe = {});

  /// Throws InputError on unknown names or out-of-range parameters.
  static ExampleId parse(std::string_view name);
  std::string name() const;
};

struct BuiltExample {
  std::string name;
  Distribution distribution;
  /// prop-ori: the 2k+1 covectors completing the coframe to a basis.
  std::optional<std::vector<DiffForm>> dual_coframe;
  /// prop-ori: the omega-tuple handed to check_almost_mni.
  std::optional<std::vector<DiffForm>> omegas;
  /// k for check_mni / check_almost_mni when the rank is odd and the
  /// dimension bound holds.
  std::optional<std::size_t> mni_k;
  /// Whether derived-length-one checks apply (false for prop-ori).
  bool bracket_generating = true;
};

/// Throws InputError on invalid parameters.
BuiltExample build_example(const ExampleId& id);

/// omega_i = X*_{p1} ^ X*_{p2} + ... + X*_{p(2k-1)} ^ X*_{p(2k)} where
/// (p1..p2k) lists 1..2k+1 without i. Throws InputError on an even-length,
/// non-1-form or sample-dependent coframe.
std::vector<DiffForm> build_prop_ori_omegas(std::span<const DiffForm> coframe);

struct PropOriIdentity {
  bool holds = false;
  /// Realized sign per i (0 when the identity fails for that i).
  std::vector<int> signs;
  /// k!
  Scalar magnitude;
};

/// (omega_i)^k == sign * k! * X*_1 ^ .. (omit i) .. ^ X*_{2k+1}, compared structurally.
PropOriIdentity verify_prop_ori_identity(std::span<const DiffForm> coframe, std::size_t k);

/// contact 1..3, even-contact 4 and 6, jet-canonical 1..4, example2-r5, prop-ori (5,1) and (6,1).
std::vector<ExampleId> builtin_corpus();

}  // namespace nonholonomy
