#include "gpsk/report.hpp"

#include <json.hpp>

namespace gpsk {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kRoman[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};

json flag_json(const Flag& f) { return json{{"value", f.value}, {"mode", to_string(f.mode)}}; }

template <class Flags>
json conditions_json(const Flags& flags) {
    json out = json::object();
    std::size_t k = 0;
    for (const auto& f : flags) out[kRoman[k++]] = flag_json(f);
    return out;
}

void field_json(json& j, const FieldSpec& field) {
    j["field"] = field.name();
    if (!field.is_exact()) j["eps"] = field.eps;
    j["involution"] = field.involution();
}

json sets_json(const std::vector<IndexSet>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(s.one_based());
    return out;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_flag(const json& v) { return v.is_object() && v.size() == 2 && v.contains("value") && v.contains("mode"); }

void text_lines(const json& v, const std::string& indent, std::string& out) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const json& x = it.value();
        out += indent + it.key() + ":";
        if (is_flag(x)) {
            out += " " + x["value"].dump() + " (" + x["mode"].get<std::string>() + ")\n";
        } else if (x.is_object()) {
            out += "\n";
            text_lines(x, indent + "  ", out);
        } else if (x.is_array()) {
            bool nested = !x.empty() && x.front().is_array();
            if (!nested) {
                for (const auto& e : x) out += " " + scalar_text(e);
                out += "\n";
            } else {
                out += "\n";
                for (const auto& row : x) {
                    out += indent + " ";
                    for (const auto& e : row) out += " " + scalar_text(e);
                    out += "\n";
                }
            }
        } else {
            out += " " + scalar_text(x) + "\n";
        }
    }
}

std::string emit(const json& j, ReportFormat format) {
    if (format == ReportFormat::json) return j.dump(2) + "\n";
    std::string out;
    text_lines(j, "", out);
    return out;
}

} // namespace

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::json;
    if (text == "text") return ReportFormat::text;
    raise(ErrorCode::invalid_argument, "unknown report format '" + std::string(text) + "' (json or text)");
}

std::string mp_set_name(const MpConditionSet& s) {
    std::string out = "{";
    const bool c[] = {s.c1, s.c2, s.c3, s.c4};
    for (int k = 0; k < 4; ++k) {
        if (!c[k]) continue;
        if (out.size() > 1) out += ',';
        out += static_cast<char>('1' + k);
    }
    return out + "}";
}

std::string render(const CurReport& r, ReportFormat format) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = "cur";
    field_json(j, r.field);
    j["shape"] = {r.rows, r.cols};
    j["ranks"] = json{{"A", r.ranks.a}, {"C", r.ranks.c}, {"U", r.ranks.u}, {"R", r.ranks.r}};
    j["I"] = r.row_indices.one_based();
    j["J"] = r.col_indices.one_based();
    j["conditions"] = conditions_json(r.conditions);
    j["seed"] = r.seed;
    j["consistent"] = r.consistent();
    return emit(j, format);
}

std::string render(const TensorCurReport& r, ReportFormat format) {
    const bool chidori = r.kind == TensorCurKind::chidori;
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = chidori ? "chidori" : "fiber";
    field_json(j, r.field);
    j["shape"] = r.shape;
    j["mlrank"] = r.mlrank;
    j["core_mlrank"] = r.core_mlrank;
    json ranks{{"U", r.rank_u}, {"C", r.rank_c}};
    if (chidori) ranks["row_slabs"] = r.rank_row_slabs;
    j["ranks"] = ranks;
    j["I"] = sets_json(r.row_sets);
    j["J"] = sets_json(r.col_sets);
    j["conditions"] = conditions_json(r.conditions);
    j["moreover"] = flag_json(r.moreover);
    if (chidori) j["v_implies_i_tested"] = r.v_implies_i_tested;
    j["seed"] = r.seed;
    j["consistent"] = r.consistent();
    return emit(j, format);
}

std::string render(const TcurReport& r, ReportFormat format) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = "tcur";
    field_json(j, r.field);
    j["shape"] = {r.rows, r.cols, r.depth};
    j["rank_reading"] = "fourier-faces";
    j["inverse_sampling"] = r.field.kind == FieldKind::real ? "conjugate-symmetric" : "facewise";
    j["face_ranks"] = json{{"T", r.face_rank_t}, {"C", r.face_rank_c}, {"R", r.face_rank_r}, {"U", r.face_rank_u}};
    j["spatial_face_ranks"] = json{{"T", r.spatial_rank_t}, {"U", r.spatial_rank_u}};
    j["I"] = r.row_indices.one_based();
    j["J"] = r.col_indices.one_based();
    j["conditions"] = conditions_json(r.conditions);
    j["reconstruction_tolerance"] = kReconstructionTol;
    j["max_reconstruction_error"] = r.max_reconstruction_error;
    j["seed"] = r.seed;
    j["consistent"] = r.consistent();
    return emit(j, format);
}

std::string render(const GenInvReport& r, ReportFormat format) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = "geninv";
    field_json(j, r.field);
    j["shape"] = {r.rows, r.cols};
    j["rank"] = r.rank;
    j["free_entries"] = r.free_entries;
    j["count"] = r.count ? json(*r.count) : json(nullptr);
    j["mode"] = to_string(r.mode);
    j["checked"] = r.checked;
    j["all_generalized_inverses"] = r.all_inner;
    json sets = json::object();
    for (const auto& [name, n] : r.mp_sets) sets[name] = n;
    j["mp_condition_sets"] = sets;
    j["canonical"] = r.canonical;
    if (r.moore_penrose) {
        j["moore_penrose"] = json{{"matrix", *r.moore_penrose}, {"conditions", r.moore_penrose_set}};
    }
    if (r.drazin) j["drazin"] = json{{"index", r.drazin_index}, {"matrix", *r.drazin}};
    j["seed"] = r.seed;
    j["consistent"] = r.consistent();
    return emit(j, format);
}

} // namespace gpsk
