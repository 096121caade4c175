#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibral/surface.hpp"
#include "fibral/witness.hpp"

namespace fibral {

struct ClearOptions {
  // Refuse when the product of component counts over the places still to be
  // cleared exceeds this bound (the recursion spawns that many leaves).
  std::size_t max_width = 1'000'000;
  std::string root_id = "w";
};

// End product of the pipeline: a witness with no vertical part at all, so
// its two horizontal sides have disjoint support and equal degree.  The
// digest binds the certificate to the canonical form of the input surface.
struct MorphismCertificate {
  std::string surface;
  std::string surface_digest;
  Witness final_witness;  // its log lives in `log` below
  std::set<std::string> d1_support;
  std::set<std::string> d2_support;
  std::set<std::string> support_intersection;  // empty for a valid certificate
  Rational degree;
  ConstructionLog log;
};

// Recursively eliminates vertical support outside `allowed`: the remaining
// places keep the sign pattern fixed by `c0`.  Per level, one witness per
// component of the fiber at the smallest unprocessed place is built, the
// interaction matrix of their vertical parts is solved for positive integer
// weights, the weighted combination's vertical part at that place becomes a
// fiber multiple, and the multiple is removed as principal.
Witness clear(const SurfaceModel& surface, const std::set<std::string>& allowed,
              const ChoiceMap& c0, const ClearOptions& options = {});

Witness combine_witnesses(const SurfaceModel& surface, const std::string& v0,
                          const std::map<std::string, Witness>& parts,
                          const std::vector<Integer>& weights,
                          const std::string& result_id = "combined");

// Requires the vertical part at v0 to pair to zero with every component;
// verifies it is r * fiber_vector, removes it, and scales the witness by the
// denominator d of r.  Returns the scaled witness and d.
std::pair<Witness, Integer> remove_principal_fiber(const SurfaceModel& surface, const Witness& w,
                                                   const std::string& v0);

MorphismCertificate prove_theorem(const SurfaceModel& surface, const ClearOptions& options = {});

// Total leaves the recursion would create for the given starting set.
std::size_t recursion_width(const SurfaceModel& surface, const std::set<std::string>& allowed);

struct ReplayResult {
  bool ok = false;
  std::size_t step_index = 0;   // meaningful when !ok and op != "binding"/"final"
  std::string op;               // step op, "binding", or "final"
  std::string detail;
  std::size_t steps_checked = 0;
};

// Independent verifier: checks the certificate's surface binding, re-executes
// every step of the log (every pairing, solve, and combination recomputed
// from the raw fiber matrices), and compares the reconstructed final state
// against the embedded witness.  Stops at the first divergence.
ReplayResult replay_certificate(const SurfaceModel& surface, const MorphismCertificate& cert);

}  // namespace fibral
