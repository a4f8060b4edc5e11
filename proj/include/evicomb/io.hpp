#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "evicomb/fusion.hpp"

namespace evicomb::io {

/// Input could not be parsed or violates a schema. The message always names
/// the offending file and, where known, the line or item index.
class ParseError : public Error {
public:
    using Error::Error;
};

enum class EvidenceKind { general, triplet, dichotomous };

const char* to_string(EvidenceKind k) noexcept;

/// A parsed evidence file: one frame, one kind, one or more items. Exactly
/// one of the three vectors is populated, matching `kind`.
struct EvidenceFile {
    EvidenceKind kind;
    Frame frame;
    std::vector<MassFunction> general;
    std::vector<TripletMass> triplets;
    std::vector<DichotomousMass> dichotomous;

    std::size_t item_count() const noexcept;
};

/// Formats a scalar with 12 significant digits (round-trips within the
/// library's test tolerances).
std::string format_number(double value);

/// Evidence files are JSON: either a single evidence object or an array of
/// them, mutually typed. Object schemas:
///   general:     {"frame": [...], "focal": [{"set": [...], "mass": m}, ...]}
///   triplet:     {"frame": [...], "a1": label, "a2": label, "m1": x, "m2": y}
///                (Theta mass implied as 1 - m1 - m2)
///   dichotomous: {"frame": [...], "focus": label, "p": x, "c": y}
///                (r implied as 1 - p - c)
EvidenceFile parse_evidence_json(const std::string& text, const std::string& name);
EvidenceFile read_evidence_file(const std::string& path);

std::string to_json(const MassFunction& m);
std::string to_json(const TripletMass& t);
std::string to_json(const DichotomousMass& d);

/// Serializes the whole file back to the array form it parses from.
std::string to_json(const EvidenceFile& file);

/// Score matrices are long-form CSV with header
/// "item,classifier,<cat1>,...,<catk>" and one row per (item, classifier).
ScoreMatrix parse_score_csv(std::istream& in, const std::string& name);
ScoreMatrix read_score_csv(const std::string& path);
void write_score_csv(std::ostream& out, const ScoreMatrix& matrix);

/// Labels are CSV with header "item,label".
std::map<std::string, std::string> parse_labels_csv(std::istream& in, const std::string& name);
std::map<std::string, std::string> read_labels_csv(const std::string& path);
void write_labels_csv(std::ostream& out, const std::map<std::string, std::string>& labels);

/// Fusion report as JSON: per-item decisions plus, when labels were
/// supplied, the accuracy section.
std::string report_to_json(const FusionReport& report, const Frame& frame);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace evicomb::io
