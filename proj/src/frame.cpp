#include "evicomb/frame.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace evicomb {

Frame Frame::make(std::vector<std::string> labels) {
    if (labels.empty()) {
        throw FrameError(FrameError::Reason::empty_labels,
                         "frame needs at least one label");
    }
    if (labels.size() > max_size) {
        std::ostringstream msg;
        msg << "frame of " << labels.size() << " labels exceeds the limit of "
            << max_size;
        throw FrameError(FrameError::Reason::too_many_labels, msg.str());
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw FrameError(FrameError::Reason::duplicate_label,
                             "duplicate label '" + label + "' in frame");
        }
    }
    auto data = std::make_shared<Data>();
    data->labels = std::move(labels);
    return Frame(std::move(data));
}

std::optional<std::size_t> Frame::find(const std::string& label) const noexcept {
    const auto& ls = data_->labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ls.begin());
}

std::size_t Frame::index_of(const std::string& label) const {
    if (auto idx = find(label)) return *idx;
    throw FrameError(FrameError::Reason::unknown_label,
                     "label '" + label + "' is not in the frame");
}

Subset::Subset(Frame frame, std::uint32_t bits) : frame_(std::move(frame)), bits_(bits) {
    if (bits & ~frame_.full_mask()) {
        throw MassError("subset uses indices outside its frame");
    }
}

Subset Subset::of_indices(Frame frame, const std::vector<std::size_t>& indices) {
    std::uint32_t bits = 0;
    for (std::size_t i : indices) {
        if (i >= frame.size()) {
            throw MassError("subset member index out of range");
        }
        bits |= std::uint32_t{1} << i;
    }
    return Subset(std::move(frame), bits);
}

Subset Subset::of_labels(Frame frame, const std::vector<std::string>& labels) {
    std::uint32_t bits = 0;
    for (const auto& label : labels) {
        bits |= std::uint32_t{1} << frame.index_of(label);
    }
    return Subset(std::move(frame), bits);
}

std::size_t Subset::count() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<std::string> Subset::member_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < frame_.size(); ++i) {
        if (contains(i)) out.push_back(frame_.label(i));
    }
    return out;
}

void require_same_frame(const Frame& a, const Frame& b, const char* operation) {
    if (!same_frame(a, b)) {
        throw FrameMismatchError(std::string(operation) +
                                 ": operands live on different frames");
    }
}

} // namespace evicomb
