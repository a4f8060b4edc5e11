#include "evicomb/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace evicomb::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& name, const std::string& what) {
    throw ParseError(name + ": " + what);
}

std::string item_tag(const std::string& name, std::size_t index) {
    return name + ", item " + std::to_string(index);
}

/// Minimal JSON string escaping: quotes, backslashes, and control bytes.
void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    out += '"';
}

void append_frame(std::string& out, const Frame& frame) {
    out += "\"frame\": [";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        if (i > 0) out += ", ";
        append_escaped(out, frame.label(i));
    }
    out += ']';
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    const json& v = require_key(obj, key, where);
    if (!v.is_number()) fail(where, std::string("key '") + key + "' is not a number");
    return v.get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require_key(obj, key, where);
    if (!v.is_string()) fail(where, std::string("key '") + key + "' is not a string");
    return v.get<std::string>();
}

std::vector<std::string> require_string_array(const json& v, const std::string& where,
                                              const char* what) {
    if (!v.is_array()) fail(where, std::string(what) + " is not an array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_string()) fail(where, std::string(what) + " contains a non-string");
        out.push_back(e.get<std::string>());
    }
    return out;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail(where, "unknown key '" + key + "'");
    }
}

EvidenceKind detect_kind(const json& obj, const std::string& where) {
    if (obj.contains("focal")) return EvidenceKind::general;
    if (obj.contains("a1")) return EvidenceKind::triplet;
    if (obj.contains("focus")) return EvidenceKind::dichotomous;
    fail(where, "cannot tell the evidence kind (expected 'focal', 'a1', or 'focus')");
}

/// The Theta-completing mass implied by the explicit ones. Slightly negative
/// residuals within the mass-sum tolerance round up to zero; anything worse
/// is passed through for the constructor to reject.
double implied_rest(double explicit_sum) {
    const double rest = 1.0 - explicit_sum;
    if (rest < 0.0 && rest >= -tol::mass_sum) return 0.0;
    return rest;
}

MassFunction parse_general_item(const json& obj, const Frame& frame,
                                const std::string& where) {
    reject_unknown_keys(obj, {"frame", "focal"}, where);
    const json& focal_json = require_key(obj, "focal", where);
    if (!focal_json.is_array()) fail(where, "'focal' is not an array");
    MassFunction::FocalMap focal;
    for (std::size_t i = 0; i < focal_json.size(); ++i) {
        const json& entry = focal_json[i];
        const std::string entry_where = where + ", focal entry " + std::to_string(i);
        if (!entry.is_object()) fail(entry_where, "not an object");
        reject_unknown_keys(entry, {"set", "mass"}, entry_where);
        const std::vector<std::string> labels =
            require_string_array(require_key(entry, "set", entry_where), entry_where, "'set'");
        const double mass = require_number(entry, "mass", entry_where);
        std::uint32_t bits = 0;
        for (const std::string& label : labels) {
            bits |= std::uint32_t{1} << frame.index_of(label);
        }
        if (!focal.emplace(bits, mass).second) {
            fail(entry_where, "repeats an earlier focal set");
        }
    }
    return MassFunction::from_focal(frame, std::move(focal));
}

TripletMass parse_triplet_item(const json& obj, const Frame& frame,
                               const std::string& where) {
    reject_unknown_keys(obj, {"frame", "a1", "a2", "m1", "m2"}, where);
    const std::size_t a1 = frame.index_of(require_string(obj, "a1", where));
    const std::size_t a2 = frame.index_of(require_string(obj, "a2", where));
    const double m1 = require_number(obj, "m1", where);
    const double m2 = require_number(obj, "m2", where);
    return TripletMass(frame, a1, a2, m1, m2, implied_rest(m1 + m2));
}

DichotomousMass parse_dichotomous_item(const json& obj, const Frame& frame,
                                       const std::string& where) {
    reject_unknown_keys(obj, {"frame", "focus", "p", "c"}, where);
    const std::size_t focus = frame.index_of(require_string(obj, "focus", where));
    const double p = require_number(obj, "p", where);
    const double c = require_number(obj, "c", where);
    return DichotomousMass(frame, focus, p, c, implied_rest(p + c));
}

} // namespace

const char* to_string(EvidenceKind k) noexcept {
    switch (k) {
        case EvidenceKind::general: return "general";
        case EvidenceKind::triplet: return "triplet";
        case EvidenceKind::dichotomous: return "dichotomous";
    }
    return "?";
}

std::size_t EvidenceFile::item_count() const noexcept {
    switch (kind) {
        case EvidenceKind::general: return general.size();
        case EvidenceKind::triplet: return triplets.size();
        case EvidenceKind::dichotomous: return dichotomous.size();
    }
    return 0;
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

EvidenceFile parse_evidence_json(const std::string& text, const std::string& name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(name, e.what());
    }

    std::vector<const json*> items;
    if (root.is_object()) {
        items.push_back(&root);
    } else if (root.is_array()) {
        if (root.empty()) fail(name, "evidence array is empty");
        for (const json& e : root) items.push_back(&e);
    } else {
        fail(name, "top level is neither an object nor an array");
    }

    // The frame is declared per item but must agree everywhere; a single
    // Frame instance backs the whole file so the parsed values are mutually
    // combinable (frames compare by identity).
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i]->is_object()) fail(item_tag(name, i), "not an object");
    }
    const std::vector<std::string> labels = require_string_array(
        require_key(*items[0], "frame", item_tag(name, 0)), item_tag(name, 0), "'frame'");
    EvidenceFile file{detect_kind(*items[0], item_tag(name, 0)), Frame::make(labels),
                      {}, {}, {}};

    for (std::size_t i = 0; i < items.size(); ++i) {
        const json& obj = *items[i];
        const std::string where = item_tag(name, i);
        if (i > 0) {
            if (detect_kind(obj, where) != file.kind) {
                fail(where, std::string("evidence kind differs from '") +
                                to_string(file.kind) + "'");
            }
            if (require_string_array(require_key(obj, "frame", where), where,
                                     "'frame'") != labels) {
                fail(where, "frame differs from the first item's");
            }
        }
        try {
            switch (file.kind) {
                case EvidenceKind::general:
                    file.general.push_back(parse_general_item(obj, file.frame, where));
                    break;
                case EvidenceKind::triplet:
                    file.triplets.push_back(parse_triplet_item(obj, file.frame, where));
                    break;
                case EvidenceKind::dichotomous:
                    file.dichotomous.push_back(
                        parse_dichotomous_item(obj, file.frame, where));
                    break;
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    return file;
}

EvidenceFile read_evidence_file(const std::string& path) {
    return parse_evidence_json(read_text_file(path), path);
}

std::string to_json(const MassFunction& m) {
    std::string out = "{";
    append_frame(out, m.frame());
    out += ", \"focal\": [";
    bool first = true;
    for (const auto& [bits, mass] : m.focal()) {
        if (!first) out += ", ";
        first = false;
        out += "{\"set\": [";
        bool first_label = true;
        for (std::size_t i = 0; i < m.frame().size(); ++i) {
            if ((bits >> i) & 1u) {
                if (!first_label) out += ", ";
                first_label = false;
                append_escaped(out, m.frame().label(i));
            }
        }
        out += "], \"mass\": " + format_number(mass) + "}";
    }
    out += "]}";
    return out;
}

std::string to_json(const TripletMass& t) {
    std::string out = "{";
    append_frame(out, t.frame());
    out += ", \"a1\": ";
    append_escaped(out, t.frame().label(t.a1()));
    out += ", \"a2\": ";
    append_escaped(out, t.frame().label(t.a2()));
    out += ", \"m1\": " + format_number(t.m1());
    out += ", \"m2\": " + format_number(t.m2());
    out += '}';
    return out;
}

std::string to_json(const DichotomousMass& d) {
    std::string out = "{";
    append_frame(out, d.frame());
    out += ", \"focus\": ";
    append_escaped(out, d.frame().label(d.focus()));
    out += ", \"p\": " + format_number(d.p());
    out += ", \"c\": " + format_number(d.c());
    out += '}';
    return out;
}

std::string to_json(const EvidenceFile& file) {
    std::string out = "[\n";
    const auto append_items = [&](const auto& items) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            out += "  " + to_json(items[i]);
            if (i + 1 < items.size()) out += ',';
            out += '\n';
        }
    };
    switch (file.kind) {
        case EvidenceKind::general: append_items(file.general); break;
        case EvidenceKind::triplet: append_items(file.triplets); break;
        case EvidenceKind::dichotomous: append_items(file.dichotomous); break;
    }
    out += "]\n";
    return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_score(const std::string& field, const std::string& where) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        fail(where, "'" + field + "' is not a number");
    }
    return value;
}

std::string line_tag(const std::string& name, std::size_t line_no) {
    return name + ", line " + std::to_string(line_no);
}

} // namespace

ScoreMatrix parse_score_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) fail(name, "empty file");
    const std::vector<std::string> header = split_csv_line(std::move(line));
    if (header.size() < 3 || header[0] != "item" || header[1] != "classifier") {
        fail(name + ", line 1", "header must be item,classifier,<categories...>");
    }
    const std::vector<std::string> categories(header.begin() + 2, header.end());

    std::vector<ScoreMatrix::Item> items;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(std::move(line));
        const std::string where = line_tag(name, line_no);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << fields.size() << " fields, expected " << header.size();
            fail(where, msg.str());
        }
        std::vector<double> scores;
        scores.reserve(categories.size());
        for (std::size_t i = 2; i < fields.size(); ++i) {
            scores.push_back(parse_score(fields[i], where));
        }
        if (items.empty() || items.back().id != fields[0]) {
            items.push_back(ScoreMatrix::Item{fields[0], {}});
        }
        items.back().scores.emplace_back(fields[1], std::move(scores));
    }

    try {
        return ScoreMatrix::make(Frame::make(categories), std::move(items));
    } catch (const Error& e) {
        fail(name, e.what());
    }
}

ScoreMatrix read_score_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    return parse_score_csv(in, path);
}

void write_score_csv(std::ostream& out, const ScoreMatrix& matrix) {
    out << "item,classifier";
    for (const std::string& label : matrix.categories().labels()) {
        out << ',' << label;
    }
    out << '\n';
    for (const auto& item : matrix.items()) {
        for (const auto& [classifier, scores] : item.scores) {
            out << item.id << ',' << classifier;
            for (double s : scores) out << ',' << format_number(s);
            out << '\n';
        }
    }
}

std::map<std::string, std::string> parse_labels_csv(std::istream& in,
                                                    const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) fail(name, "empty file");
    const std::vector<std::string> header = split_csv_line(std::move(line));
    if (header.size() != 2 || header[0] != "item" || header[1] != "label") {
        fail(name + ", line 1", "header must be item,label");
    }
    std::map<std::string, std::string> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(std::move(line));
        const std::string where = line_tag(name, line_no);
        if (fields.size() != 2) fail(where, "expected item,label");
        if (!labels.emplace(fields[0], fields[1]).second) {
            fail(where, "duplicate item '" + fields[0] + "'");
        }
    }
    return labels;
}

std::map<std::string, std::string> read_labels_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    return parse_labels_csv(in, path);
}

void write_labels_csv(std::ostream& out,
                      const std::map<std::string, std::string>& labels) {
    out << "item,label\n";
    for (const auto& [item, label] : labels) {
        out << item << ',' << label << '\n';
    }
}

std::string report_to_json(const FusionReport& report, const Frame& frame) {
    std::string out = "{\n";
    out += "  \"method\": \"";
    out += to_string(report.method);
    out += "\",\n";
    out += "  \"items\": " + std::to_string(report.decisions.size()) + ",\n";
    out += "  \"undecided\": " + std::to_string(report.undecided) + ",\n";
    out += "  \"combine_steps\": " + std::to_string(report.combine_steps) + ",\n";
    if (report.accuracy) {
        out += "  \"accuracy\": " + format_number(*report.accuracy) + ",\n";
    }
    if (!report.individual_accuracy.empty()) {
        out += "  \"individual_accuracy\": [";
        bool first = true;
        for (const auto& [classifier, acc] : report.individual_accuracy) {
            if (!first) out += ", ";
            first = false;
            out += "{\"classifier\": ";
            append_escaped(out, classifier);
            out += ", \"accuracy\": " + format_number(acc) + "}";
        }
        out += "],\n";
    }
    out += "  \"decisions\": [\n";
    for (std::size_t i = 0; i < report.decisions.size(); ++i) {
        const ItemDecision& d = report.decisions[i];
        out += "    {\"item\": ";
        append_escaped(out, d.item);
        if (d.undecided) {
            out += ", \"decided\": false, \"note\": ";
            append_escaped(out, d.note);
        } else {
            out += ", \"decided\": true, \"category\": ";
            append_escaped(out, frame.label(d.category));
            if (d.combined) {
                out += ", \"summary\": " + to_json(*d.combined);
            }
        }
        out += '}';
        if (i + 1 < report.decisions.size()) out += ',';
        out += '\n';
    }
    out += "  ],\n";
    out += "  \"wall_ns\": " + format_number(report.wall_ns) + "\n";
    out += "}\n";
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw ParseError(path + ": read failed");
    return std::move(buffer).str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace evicomb::io
