#include <mbar/boundary.hpp>
#include <mbar/series.hpp>

#include <algorithm>
#include <sstream>

namespace mbar
{

BoundaryComponent BoundaryComponent::separating(int h, std::vector<int> P)
{
    if (h < 0)
        throw ContractError("separating boundary component needs h >= 0");
    std::sort(P.begin(), P.end());
    if (std::adjacent_find(P.begin(), P.end()) != P.end())
        throw ContractError("repeated label in P");
    return {Kind::Separating, h, std::move(P)};
}

std::string BoundaryComponent::name() const
{
    if (is_irr())
        return "irr";
    std::ostringstream os;
    os << "sep:" << h;
    if (!P.empty()) {
        os << ":{";
        for (std::size_t i = 0; i < P.size(); ++i)
            os << (i ? "," : "") << P[i];
        os << "}";
    }
    return os.str();
}

namespace
{

int parse_int(const std::string &s, const std::string &context)
{
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(s, &pos);
    } catch (const std::exception &) {
        pos = std::string::npos;
    }
    if (pos != s.size())
        throw ContractError("cannot parse '" + s + "' as an integer in '" + context + "'");
    return value;
}

} // namespace

BoundaryComponent parse_boundary_component(const std::string &text)
{
    if (text == "irr")
        return BoundaryComponent::irr();
    if (text.rfind("sep:", 0) != 0)
        throw ContractError("boundary component must be 'irr' or 'sep:h', got '" + text + "'");
    const std::string rest = text.substr(4);
    const auto colon = rest.find(':');
    const int h = parse_int(rest.substr(0, colon), text);
    std::vector<int> P;
    if (colon != std::string::npos) {
        std::string list = rest.substr(colon + 1);
        if (list.size() < 2 || list.front() != '{' || list.back() != '}')
            throw ContractError("leg set must be written as {1,2,...} in '" + text + "'");
        list = list.substr(1, list.size() - 2);
        std::stringstream ss(list);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty())
                P.push_back(parse_int(item, text));
    }
    return BoundaryComponent::separating(h, std::move(P));
}

} // namespace mbar
