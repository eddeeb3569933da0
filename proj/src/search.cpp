#include "dht/search.hpp"

namespace dht {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes:
        return "yes";
    case Verdict::no_within_bound:
        return "no-within-bound";
    case Verdict::exact_no:
        return "exact-no";
    case Verdict::bound_exhausted:
        return "bound-exhausted";
    }
    return "?";
}

const char* to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found:
        return "found";
    case SearchStatus::exhausted:
        return "exhausted";
    case SearchStatus::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

State pack(const std::vector<PointIndex>& values)
{
    State s(values.size(), '\0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > 0xFF)
            throw Error("search state packing supports images of at most 256 points");
        s[i] = static_cast<char>(values[i]);
    }
    return s;
}

std::vector<PointIndex> unpack(const State& s)
{
    std::vector<PointIndex> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = static_cast<unsigned char>(s[i]);
    return out;
}

}  // namespace dht
