#include "ipaths/signature.hpp"

#include "ipaths/errors.hpp"

namespace ipaths {

Signature::Signature(std::string bits) : bits_(std::move(bits)) {
    if (bits_.empty())
        throw InputError("signature must have at least one bit");
    for (char c : bits_)
        if (c != '0' && c != '1')
            throw InputError("signature '" + bits_ + "' contains a character other than 0/1");
}

Signature Signature::parse(std::string_view text) {
    if (text == "*")
        return wildcard();
    return Signature(std::string(text));
}

Signature compute_signature(std::span<const double> source_filters,
                            std::span<const double> target_filters) {
    if (source_filters.size() != target_filters.size())
        throw InputError("filter vectors differ in length (" + std::to_string(source_filters.size()) +
                         " vs " + std::to_string(target_filters.size()) + ")");
    if (source_filters.empty())
        throw InputError("cannot sign an edge without filter values");
    std::string bits(source_filters.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (source_filters[i] <= target_filters[i])  // ties give 1
            bits[i] = '1';
    return Signature(std::move(bits));
}

SignatureMatch signature_compatible(const ResolvedSignature& path_sig,
                                    const Signature& edge_sig) {
    if (edge_sig.is_wildcard())
        return {true, path_sig};
    if (!path_sig)
        return {true, edge_sig};
    if (*path_sig == edge_sig)
        return {true, path_sig};
    return {false, std::nullopt};
}

}  // namespace ipaths
