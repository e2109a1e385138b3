#include "hecc/topology.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace hecc {

TopologyError::TopologyError(Kind kind, const std::string& message, std::optional<std::pair<Bits, Bits>> witness)
    : std::invalid_argument(std::string(to_string(kind)) + ": " + message), kind_(kind), witness_(witness) {}

const char* to_string(TopologyError::Kind k) noexcept {
    using K = TopologyError::Kind;
    switch (k) {
    case K::MissingEmptyOrFull: return "MissingEmptyOrFull";
    case K::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case K::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case K::UnknownReferencePoint: return "UnknownReferencePoint";
    case K::MixedTopologies: return "MixedTopologies";
    case K::BoundExceeded: return "BoundExceeded";
    case K::UnknownModel: return "UnknownModel";
    case K::InvalidModel: return "InvalidModel";
    }
    return "?";
}

struct FiniteTopology::Data {
    std::vector<std::string> points;
    std::vector<Bits> opens;
    std::size_t reference_point = 0;
    Bits full = 0;
};

std::size_t FiniteTopology::size() const noexcept { return data_->points.size(); }
const std::vector<std::string>& FiniteTopology::points() const noexcept { return data_->points; }
const std::vector<Bits>& FiniteTopology::open_bits() const noexcept { return data_->opens; }
std::size_t FiniteTopology::reference_point() const noexcept { return data_->reference_point; }
Bits FiniteTopology::full_bits() const noexcept { return data_->full; }

std::vector<OpenSet> FiniteTopology::opens() const {
    std::vector<OpenSet> out;
    out.reserve(data_->opens.size());
    for (Bits b : data_->opens) out.emplace_back(*this, b);
    return out;
}

bool FiniteTopology::is_open(Bits bits) const noexcept {
    return std::binary_search(data_->opens.begin(), data_->opens.end(), bits);
}

OpenSet FiniteTopology::open(Bits bits) const {
    if (!is_open(bits)) throw std::invalid_argument(render(bits) + " is not open");
    return OpenSet(*this, bits);
}

OpenSet FiniteTopology::empty() const { return open(0); }
OpenSet FiniteTopology::full() const { return open(full_bits()); }

std::optional<std::size_t> FiniteTopology::point_index(std::string_view name) const {
    for (std::size_t i = 0; i < data_->points.size(); ++i)
        if (data_->points[i] == name) return i;
    return std::nullopt;
}

FiniteTopology FiniteTopology::with_reference_point(std::size_t q) const {
    return validate(data_->points, data_->opens, q);
}

std::string FiniteTopology::render(Bits bits) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < data_->points.size(); ++i) {
        if (!((bits >> i) & 1u)) continue;
        if (!first) out += ',';
        out += data_->points[i];
        first = false;
    }
    return out + "}";
}

bool OpenSet::subset_of(const OpenSet& other) const {
    if (!same_topology(topology_, other.topology_))
        throw TopologyError(TopologyError::Kind::MixedTopologies, "opens of different topologies compared");
    return (bits_ & ~other.bits_) == 0;
}

FiniteTopology validate(std::vector<std::string> points, std::vector<Bits> opens, std::size_t reference_point) {
    using K = TopologyError::Kind;
    if (points.empty()) throw TopologyError(K::InvalidModel, "a space needs at least one point");
    if (points.size() > kMaxPoints)
        throw TopologyError(K::BoundExceeded, "at most " + std::to_string(kMaxPoints) + " points are supported");
    if (std::set<std::string>(points.begin(), points.end()).size() != points.size())
        throw TopologyError(K::InvalidModel, "duplicate point names");
    Bits full = points.size() == 32 ? ~Bits{0} : (Bits{1} << points.size()) - 1;
    for (Bits b : opens)
        if (b & ~full) throw TopologyError(K::InvalidModel, "an open mentions points outside the space");
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    auto has = [&](Bits b) { return std::binary_search(opens.begin(), opens.end(), b); };
    if (!has(0) || !has(full)) throw TopologyError(K::MissingEmptyOrFull, "the empty set and X must be open");
    for (std::size_t i = 0; i < opens.size(); ++i)
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            if (!has(opens[i] | opens[j]))
                throw TopologyError(K::NotClosedUnderUnion, "union of two opens is not open",
                                    std::pair{opens[i], opens[j]});
            if (!has(opens[i] & opens[j]))
                throw TopologyError(K::NotClosedUnderIntersection, "intersection of two opens is not open",
                                    std::pair{opens[i], opens[j]});
        }
    if (reference_point >= points.size())
        throw TopologyError(K::UnknownReferencePoint, "reference point index out of range");
    auto data = std::make_shared<FiniteTopology::Data>();
    data->points = std::move(points);
    data->opens = std::move(opens);
    data->reference_point = reference_point;
    data->full = full;
    FiniteTopology t;
    t.data_ = std::move(data);
    return t;
}

namespace {

void require_same(const FiniteTopology& topo, const OpenSet& o) {
    if (!same_topology(topo, o.topology()))
        throw TopologyError(TopologyError::Kind::MixedTopologies, "opens of different topologies combined");
}

}  // namespace

OpenSet join(const OpenSet& a, const OpenSet& b) {
    require_same(a.topology(), b);
    return OpenSet(a.topology(), a.bits() | b.bits());
}

OpenSet meet(const OpenSet& a, const OpenSet& b) {
    require_same(a.topology(), b);
    return OpenSet(a.topology(), a.bits() & b.bits());
}

OpenSet join_family(const FiniteTopology& topo, const std::vector<OpenSet>& family) {
    Bits acc = 0;
    for (const auto& o : family) {
        require_same(topo, o);
        acc |= o.bits();
    }
    return OpenSet(topo, acc);
}

OpenSet meet_family(const FiniteTopology& topo, const std::vector<OpenSet>& family) {
    Bits acc = topo.full_bits();
    for (const auto& o : family) {
        require_same(topo, o);
        acc &= o.bits();
    }
    return interior(acc, topo);
}

OpenSet interior(Bits subset, const FiniteTopology& topo) {
    Bits acc = 0;
    for (Bits o : topo.open_bits())
        if ((o & ~subset) == 0) acc |= o;
    return OpenSet(topo, acc);
}

OpenSet exponential(const OpenSet& b, const OpenSet& a) {
    require_same(b.topology(), a);
    Bits acc = 0;
    for (Bits t : b.topology().open_bits())
        if (((t & a.bits()) & ~b.bits()) == 0) acc |= t;
    return OpenSet(b.topology(), acc);
}

OpenSet minimal_neighborhood(const FiniteTopology& topo, std::size_t q) {
    Bits acc = topo.full_bits();
    for (Bits o : topo.open_bits())
        if ((o >> q) & 1u) acc &= o;
    return OpenSet(topo, acc);
}

bool check_point_condition(const FiniteTopology& topo, std::size_t q) {
    return topo.is_open(minimal_neighborhood(topo, q).bits());
}

std::vector<EnumeratedTopology> enumerate_topologies(std::size_t n) {
    if (n == 0 || n > kMaxEnumerationPoints)
        throw TopologyError(TopologyError::Kind::BoundExceeded,
                            "enumeration supports 1 to " + std::to_string(kMaxEnumerationPoints) + " points");
    const Bits full = (Bits{1} << n) - 1;
    const std::size_t proper = full - 1;  // subsets 1 .. full-1
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));

    std::vector<EnumeratedTopology> out;
    std::vector<bool> member(std::size_t{full} + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << proper); ++mask) {
        std::fill(member.begin(), member.end(), false);
        std::vector<Bits> family{0, full};
        member[0] = member[full] = true;
        for (std::size_t i = 0; i < proper; ++i)
            if ((mask >> i) & 1u) {
                family.push_back(static_cast<Bits>(i + 1));
                member[i + 1] = true;
            }
        bool closed = true;
        for (std::size_t i = 0; closed && i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j)
                if (!member[family[i] | family[j]] || !member[family[i] & family[j]]) {
                    closed = false;
                    break;
                }
        if (closed) out.push_back({mask, validate(names, std::move(family), 0)});
    }
    return out;
}

std::vector<std::string> builtin_names() { return {"classical", "sierpinski", "three_point"}; }

FiniteTopology builtin(std::string_view name) {
    if (name == "classical") return validate({"·"}, {0b0, 0b1}, 0);
    if (name == "sierpinski") return validate({"0", "1"}, {0b00, 0b01, 0b11}, 1);
    if (name == "three_point") return validate({"a", "b", "x"}, {0b000, 0b001, 0b010, 0b011, 0b111}, 2);
    throw TopologyError(TopologyError::Kind::UnknownModel, "unknown model '" + std::string(name) + "'");
}

std::vector<std::string> builtin_open_names(std::string_view name) {
    if (name == "classical") return {"0", "1"};
    if (name == "sierpinski") return {"0", "1", "2"};
    if (name == "three_point") return {"φ", "α", "β", "γ", "X"};
    return {};
}

FiniteTopology model_from_json(std::string_view text) {
    using K = TopologyError::Kind;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw TopologyError(K::InvalidModel, std::string("malformed JSON: ") + e.what());
    }
    try {
        auto points = j.at("points").get<std::vector<std::string>>();
        std::vector<Bits> opens;
        for (const auto& open : j.at("opens")) {
            Bits bits = 0;
            for (const auto& p : open) {
                auto name = p.get<std::string>();
                auto it = std::find(points.begin(), points.end(), name);
                if (it == points.end()) throw TopologyError(K::InvalidModel, "unknown point '" + name + "' in opens");
                bits |= Bits{1} << (it - points.begin());
            }
            opens.push_back(bits);
        }
        auto ref = j.at("reference_point").get<std::string>();
        auto it = std::find(points.begin(), points.end(), ref);
        if (it == points.end())
            throw TopologyError(K::UnknownReferencePoint, "reference point '" + ref + "' is not a point");
        auto index = static_cast<std::size_t>(it - points.begin());
        return validate(std::move(points), std::move(opens), index);
    } catch (const nlohmann::json::exception& e) {
        throw TopologyError(K::InvalidModel, std::string("bad model file: ") + e.what());
    }
}

std::string model_to_json(const FiniteTopology& topo) {
    nlohmann::json j;
    j["points"] = topo.points();
    nlohmann::json opens = nlohmann::json::array();
    for (Bits b : topo.open_bits()) {
        nlohmann::json open = nlohmann::json::array();
        for (std::size_t i = 0; i < topo.size(); ++i)
            if ((b >> i) & 1u) open.push_back(topo.points()[i]);
        opens.push_back(std::move(open));
    }
    j["opens"] = std::move(opens);
    j["reference_point"] = topo.points()[topo.reference_point()];
    return j.dump();
}

}  // namespace hecc
