#include "clm/measure.hpp"

#include <array>

#include "clm/baseline.hpp"
#include "clm/error.hpp"

namespace clm {

namespace {

struct Entry {
    MeasureId id;
    std::string_view name;
};

constexpr std::array<Entry, 12> kEntries{{
    {MeasureId::CH, "ch"},
    {MeasureId::DI, "di"},
    {MeasureId::II, "ii"},
    {MeasureId::XB, "xb"},
    {MeasureId::DB, "db"},
    {MeasureId::SC, "sc"},
    {MeasureId::CH_A, "ch_adj"},
    {MeasureId::DI_A, "di_adj"},
    {MeasureId::II_A, "ii_adj"},
    {MeasureId::XB_A, "xb_adj"},
    {MeasureId::DB_A, "db_adj"},
    {MeasureId::SC_A, "sc_adj"},
}};

}  // namespace

std::string_view measure_name(MeasureId id) {
    for (const auto& e : kEntries)
        if (e.id == id) return e.name;
    return "?";
}

std::optional<MeasureId> parse_measure(std::string_view name) {
    for (const auto& e : kEntries)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::vector<MeasureId> all_measures() {
    std::vector<MeasureId> out;
    for (const auto& e : kEntries) out.push_back(e.id);
    return out;
}

bool is_adjusted(MeasureId id) { return static_cast<int>(id) >= static_cast<int>(MeasureId::CH_A); }

bool higher_is_better(MeasureId id) { return id != MeasureId::XB && id != MeasureId::DB; }

MeasureId baseline_of(MeasureId id) {
    switch (id) {
        case MeasureId::CH_A: return MeasureId::CH;
        case MeasureId::DI_A: return MeasureId::DI;
        case MeasureId::II_A: return MeasureId::II;
        case MeasureId::XB_A: return MeasureId::XB;
        case MeasureId::DB_A: return MeasureId::DB;
        case MeasureId::SC_A: return MeasureId::SC;
        default: return id;
    }
}

AdjustedKind adjusted_kind(MeasureId id) {
    switch (id) {
        case MeasureId::CH_A: return AdjustedKind::CH;
        case MeasureId::DI_A: return AdjustedKind::DI;
        case MeasureId::II_A:
        case MeasureId::XB_A: return AdjustedKind::IIXB;
        case MeasureId::DB_A: return AdjustedKind::DB;
        case MeasureId::SC_A: return AdjustedKind::SC;
        default: break;
    }
    fail(ErrorKind::InvalidArgument, std::string(measure_name(id)) + " is not an adjusted measure");
}

MeasureResult evaluate_measure(MeasureId id, const Dataset& data, const Labeling& labeling,
                               const MeasureConfig& config) {
    MeasureResult r;
    if (is_adjusted(id)) {
        AdjustedResult a = evaluate_adjusted(adjusted_kind(id), data, labeling, config);
        r.score = a.score;
        r.min_mode = a.min_mode;
        r.pairs = std::move(a.pairs);
        return r;
    }
    switch (id) {
        case MeasureId::CH: r.score = ch(data, labeling); break;
        case MeasureId::DI: r.score = di(data, labeling); break;
        case MeasureId::II: r.score = ii(data, labeling, config.p); break;
        case MeasureId::XB: r.score = xb(data, labeling); break;
        case MeasureId::DB: r.score = db(data, labeling); break;
        case MeasureId::SC: r.score = sc(data, labeling); break;
        default: break;
    }
    return r;
}

double score(MeasureId id, const Dataset& data, const Labeling& labeling, const MeasureConfig& config) {
    return evaluate_measure(id, data, labeling, config).score;
}

}  // namespace clm
