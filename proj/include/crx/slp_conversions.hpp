#pragma once

#include <vector>

#include "crx/text_model.hpp"

namespace crx {

/// Per-variable run structure of an SLP, all computed bottom-up in O(n).
struct RunLinkAnnotations {
    /// Length of the maximal run of identical symbols at the start / end.
    std::vector<Length> plen;
    std::vector<Length> slen;
    std::vector<Symbol> first;
    std::vector<Symbol> last;
    /// Number of maximal runs in val(X).
    std::vector<Length> runs;
    /// X itself, unless the inner runs of val(X) (all but its first and last
    /// run) are exactly those of one child, in which case the link of that child.
    std::vector<std::uint32_t> link;
    /// link of the left / right child; unused for terminals.
    std::vector<std::uint32_t> llink;
    std::vector<std::uint32_t> rlink;
};

RunLinkAnnotations annotate_runs(const Slp& s);

/// rle_encode(expand(s)) without expanding: each run is emitted once, and
/// variables whose inner runs are inherited from a child are skipped through
/// their links.
RleString slp_to_rle(const Slp& s);

/// Greedy LZ77 by exponential and binary search on each factor length; a
/// probe of length L builds the SLP of the candidate and asks the occurrence
/// structure for an admissible earlier occurrence. The source is the leftmost
/// occurrence. Throws Error(internal) if the probes are not monotone in L.
Lz77Factorization slp_to_lz77(const Slp& s, bool self_ref);

/// Greedy LZ78 over fingerprints of the SLP.
Lz78Factorization slp_to_lz78(const Slp& s, std::uint32_t alphabet_size);

/// Bisection with candidate spans matched by fingerprint and confirmed by
/// slp_equals on the two substring SLPs.
AdmissibleGrammar slp_to_bisection(const Slp& s);

} // namespace crx
