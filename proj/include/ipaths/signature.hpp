#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ipaths {

/// Per-edge h-bit pattern: bit i is 1 when the i-th filter mean does not
/// decrease along the edge. Wildcard marks the two orientations of a
/// bidirected link and matches any concrete pattern.
class Signature {
public:
    static Signature wildcard() { return Signature{}; }

    /// Parses "0101…" or "*". Throws InputError on anything else.
    static Signature parse(std::string_view text);

    /// Concrete signature from a bit string of '0'/'1' characters.
    explicit Signature(std::string bits);

    bool is_wildcard() const noexcept { return bits_.empty(); }
    std::size_t width() const noexcept { return bits_.size(); }
    const std::string& bits() const noexcept { return bits_; }

    /// "*" for the wildcard, otherwise the bit string.
    std::string str() const { return is_wildcard() ? std::string("*") : bits_; }

    bool bit(std::size_t i) const { return bits_.at(i) == '1'; }

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;

private:
    Signature() = default;
    std::string bits_;  // empty == wildcard
};

/// A path's signature once its edges are reconciled: a concrete signature,
/// or nullopt ("undetermined") while only wildcard edges have been seen.
using ResolvedSignature = std::optional<Signature>;

/// Outcome of appending an edge signature to a partially resolved path.
struct SignatureMatch {
    bool accepted = false;
    ResolvedSignature resolved;
};

/// b_i = 1 iff source_filters[i] <= target_filters[i]. Throws InputError on
/// mismatched or empty filter vectors.
Signature compute_signature(std::span<const double> source_filters,
                            std::span<const double> target_filters);

SignatureMatch signature_compatible(const ResolvedSignature& path_sig,
                                    const Signature& edge_sig);

inline std::string to_string(const ResolvedSignature& sig) {
    return sig ? sig->str() : std::string("*");
}

}  // namespace ipaths
