#include "sndn/naming.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sndn {

ComponentId ComponentTable::intern(const std::string& token) {
    if (token.empty()) throw ParseError("empty name component");
    if (token == kSchemeToken)
        throw ParseError(std::string("reserved token '") + kSchemeToken + "' cannot be a name component");
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    auto id = static_cast<ComponentId>(tokens_.size());
    tokens_.push_back(token);
    index_.emplace(token, id);
    return id;
}

std::optional<ComponentId> ComponentTable::lookup(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

DataName make_data_name(std::vector<ComponentId> components) {
    if (components.empty()) throw ParseError("data name must have at least one component");
    DataName name;
    name.ordered = components;
    std::sort(components.begin(), components.end());
    if (std::adjacent_find(components.begin(), components.end()) != components.end())
        throw ParseError("duplicate component in data name");
    name.sorted = std::move(components);
    return name;
}

InterestName make_interest(std::vector<ComponentId> components, bool cooperative) {
    if (components.empty()) throw ParseError("interest must have at least one component");
    std::sort(components.begin(), components.end());
    components.erase(std::unique(components.begin(), components.end()), components.end());
    return InterestName{cooperative, std::move(components)};
}

bool matches(const DataName& data, const InterestName& interest) {
    return std::includes(data.sorted.begin(), data.sorted.end(),
                         interest.sorted.begin(), interest.sorted.end());
}

bool name_covers(const std::vector<ComponentId>& circle_name, const InterestName& interest) {
    return std::includes(circle_name.begin(), circle_name.end(),
                         interest.sorted.begin(), interest.sorted.end());
}

ItemId Catalog::add(DataName name) {
    auto [it, inserted] = index_.emplace(name.sorted, static_cast<ItemId>(items_.size()));
    if (!inserted) throw ParseError("duplicate data name in catalog: " + display_components(name.ordered));
    items_.push_back(std::move(name));
    return it->second;
}

std::optional<ItemId> Catalog::find(const std::vector<ComponentId>& sorted_components) const {
    auto it = index_.find(sorted_components);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string Catalog::display(ItemId id) const { return display_components(name(id).ordered); }

std::string Catalog::display_components(const std::vector<ComponentId>& comps) const {
    std::string out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out += '/';
        out += table_.token(comps[i]);
    }
    return out;
}

Catalog parse_catalog(const std::string& text, const std::string& origin) {
    Catalog catalog;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::vector<ComponentId> comps;
        try {
            for (auto& tok : split(line, '/')) {
                comps.push_back(catalog.components().intern(trim(tok)));
            }
            catalog.add(make_data_name(std::move(comps)));
        } catch (const ParseError& e) {
            throw ParseError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (catalog.size() == 0) throw ParseError(origin + ": empty catalog");
    return catalog;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path);
}

void save_catalog(const Catalog& catalog, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write catalog file: " + path);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        out << catalog.display(static_cast<ItemId>(i)) << "\n";
    }
}

}  // namespace sndn
