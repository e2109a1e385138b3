#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hecc {

using Bits = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 24;
inline constexpr std::size_t kMaxEnumerationPoints = 4;

class TopologyError : public std::invalid_argument {
public:
    enum class Kind {
        MissingEmptyOrFull,
        NotClosedUnderUnion,
        NotClosedUnderIntersection,
        UnknownReferencePoint,
        MixedTopologies,
        BoundExceeded,
        UnknownModel,
        InvalidModel,
    };

    TopologyError(Kind kind, const std::string& message, std::optional<std::pair<Bits, Bits>> witness = {});

    Kind kind() const noexcept { return kind_; }
    /// The offending pair of opens for the closure errors.
    const std::optional<std::pair<Bits, Bits>>& witness() const noexcept { return witness_; }

private:
    Kind kind_;
    std::optional<std::pair<Bits, Bits>> witness_;
};

const char* to_string(TopologyError::Kind k) noexcept;

class OpenSet;

/// A finite topological space with a reference point. Immutable once built;
/// copies share identity, so opens of a copy combine with opens of the original.
class FiniteTopology {
public:
    std::size_t size() const noexcept;
    const std::vector<std::string>& points() const noexcept;
    /// All opens ordered by bitset value, so the empty set is first and X last.
    const std::vector<Bits>& open_bits() const noexcept;
    std::vector<OpenSet> opens() const;
    std::size_t reference_point() const noexcept;
    Bits full_bits() const noexcept;

    bool is_open(Bits bits) const noexcept;
    OpenSet open(Bits bits) const;
    OpenSet empty() const;
    OpenSet full() const;

    std::optional<std::size_t> point_index(std::string_view name) const;

    /// Same space and opens, another reference point. The result has its own
    /// identity.
    FiniteTopology with_reference_point(std::size_t q) const;

    /// Renders `{p1,p2}` with points in declaration order.
    std::string render(Bits bits) const;

    friend bool same_topology(const FiniteTopology& a, const FiniteTopology& b) noexcept {
        return a.data_ == b.data_;
    }

private:
    FiniteTopology() = default;
    friend FiniteTopology validate(std::vector<std::string> points, std::vector<Bits> opens,
                                   std::size_t reference_point);
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// An open set of one particular topology.
class OpenSet {
public:
    OpenSet(FiniteTopology topology, Bits bits) : topology_(std::move(topology)), bits_(bits) {}

    Bits bits() const noexcept { return bits_; }
    const FiniteTopology& topology() const noexcept { return topology_; }

    bool contains(std::size_t point) const noexcept { return (bits_ >> point) & 1u; }
    bool subset_of(const OpenSet& other) const;

    friend bool operator==(const OpenSet& a, const OpenSet& b) {
        return same_topology(a.topology_, b.topology_) && a.bits_ == b.bits_;
    }
    friend bool operator!=(const OpenSet& a, const OpenSet& b) { return !(a == b); }
    /// Only meaningful within one topology.
    friend bool operator<(const OpenSet& a, const OpenSet& b) { return a.bits_ < b.bits_; }

private:
    FiniteTopology topology_;
    Bits bits_;
};

/// Checks the axioms of a finite topology and builds it. Opens may be given in
/// any order and with duplicates.
FiniteTopology validate(std::vector<std::string> points, std::vector<Bits> opens, std::size_t reference_point);

OpenSet join(const OpenSet& a, const OpenSet& b);
OpenSet meet(const OpenSet& a, const OpenSet& b);
OpenSet join_family(const FiniteTopology& topo, const std::vector<OpenSet>& family);
OpenSet meet_family(const FiniteTopology& topo, const std::vector<OpenSet>& family);
OpenSet interior(Bits subset, const FiniteTopology& topo);
/// b^a: the largest open t with t meet a below b.
OpenSet exponential(const OpenSet& b, const OpenSet& a);

OpenSet minimal_neighborhood(const FiniteTopology& topo, std::size_t q);
bool check_point_condition(const FiniteTopology& topo, std::size_t q);

struct EnumeratedTopology {
    /// Bit i set when the (i+1)-th proper nonempty subset is in the family.
    std::uint64_t family_mask;
    FiniteTopology topology;  // points "0".."n-1", reference point 0
};

/// Every topology on n points, ordered by family mask.
std::vector<EnumeratedTopology> enumerate_topologies(std::size_t n);

std::vector<std::string> builtin_names();
FiniteTopology builtin(std::string_view name);
/// Conventional names (0, 1, 2 or φ, α, ...) of the opens of a builtin model, in open order;
/// empty for models without such names.
std::vector<std::string> builtin_open_names(std::string_view name);

/// Model files: {"points": [...], "opens": [[...], ...], "reference_point": "..."}.
FiniteTopology model_from_json(std::string_view text);
std::string model_to_json(const FiniteTopology& topo);

}  // namespace hecc
