#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sous/errors.hpp"

namespace sous {

/// Lowercase, trim, and collapse internal whitespace runs to single spaces.
inline std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
        if (ws) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    }
    return out;
}

/// A natural-language label for a state of affairs ("chopped carrot").
/// Normalized on construction; equality is plain string equality.
class DescriptiveString {
  public:
    explicit DescriptiveString(std::string_view raw) : text_(normalize_text(raw)) {
        if (text_.empty())
            throw ValidationError("descriptive string is empty after normalization");
    }

    const std::string& text() const { return text_; }

    auto operator<=>(const DescriptiveString&) const = default;

  private:
    std::string text_;
};

/// Set of descriptive strings with deterministic (insertion) iteration order.
class StringSet {
  public:
    StringSet() = default;
    StringSet(std::initializer_list<DescriptiveString> items) {
        for (const auto& s : items) insert(s);
    }

    bool insert(const DescriptiveString& s) {
        if (contains(s)) return false;
        items_.push_back(s);
        return true;
    }

    bool contains(const DescriptiveString& s) const {
        for (const auto& it : items_)
            if (it == s) return true;
        return false;
    }

    bool intersects(const StringSet& other) const {
        for (const auto& it : items_)
            if (other.contains(it)) return true;
        return false;
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const DescriptiveString& operator[](std::size_t i) const { return items_[i]; }

    bool operator==(const StringSet& other) const {
        if (size() != other.size()) return false;
        for (const auto& it : items_)
            if (!other.contains(it)) return false;
        return true;
    }

  private:
    std::vector<DescriptiveString> items_;
};

} // namespace sous

template <>
struct std::hash<sous::DescriptiveString> {
    std::size_t operator()(const sous::DescriptiveString& s) const noexcept {
        return std::hash<std::string>{}(s.text());
    }
};
