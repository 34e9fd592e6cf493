#pragma once

#include <string>

#include "mfa/errors.hpp"

namespace mfa {

enum class Slot { Atom, Field, Mirror };

/// Dimensions and ordering of the atom (x) field (x) mirror tensor basis.
/// Ordering is atom-major, then field, then mirror; atomic index 0 is |e>,
/// index 1 is |g>. Basis index of |a,n,m> is a*Nf*Nm + n*Nm + m.
struct TensorLayout {
    static constexpr int atom_dim = 2;
    int field_dim = 16;
    int mirror_dim = 32;

    int total_dim() const { return atom_dim * field_dim * mirror_dim; }

    int index(int atom, int field, int mirror) const {
        return (atom * field_dim + field) * mirror_dim + mirror;
    }

    int slot_dim(Slot s) const {
        switch (s) {
            case Slot::Atom: return atom_dim;
            case Slot::Field: return field_dim;
            default: return mirror_dim;
        }
    }

    bool operator==(const TensorLayout&) const = default;

    void validate() const {
        if (field_dim < 2 || mirror_dim < 2)
            throw LayoutError("layout too small: field_dim and mirror_dim must be >= 2, got field_dim=" +
                              std::to_string(field_dim) + " mirror_dim=" + std::to_string(mirror_dim));
    }
};

inline void require_same_layout(const TensorLayout& a, const TensorLayout& b, const char* what) {
    if (!(a == b))
        throw LayoutError(std::string(what) + ": layout mismatch (" +
                          std::to_string(a.field_dim) + "x" + std::to_string(a.mirror_dim) + " vs " +
                          std::to_string(b.field_dim) + "x" + std::to_string(b.mirror_dim) + ")");
}

} // namespace mfa
