#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sndn/core.hpp"

namespace sndn {

/// Reserved scheme prefix; marks cooperative-retrieval interests and is
/// banned from data names and the component namespace.
inline constexpr const char* kSchemeToken = "sNDN";

/// Interns namespace tokens to dense ComponentIds. Case-sensitive, exact
/// token equality. Immutable once a catalog is loaded.
class ComponentTable {
public:
    /// Interns `token`, returning its id. Throws ParseError for the reserved
    /// scheme token or an empty token.
    ComponentId intern(const std::string& token);

    std::optional<ComponentId> lookup(const std::string& token) const;
    const std::string& token(ComponentId id) const { return tokens_.at(id); }
    std::size_t size() const { return tokens_.size(); }

private:
    std::vector<std::string> tokens_;
    std::map<std::string, ComponentId> index_;
};

/// A data name: a non-empty duplicate-free set of components. The original
/// component order is kept for display only; equality is set equality.
struct DataName {
    std::vector<ComponentId> ordered;  // display order
    std::vector<ComponentId> sorted;   // canonical set

    bool operator==(const DataName& o) const { return sorted == o.sorted; }
};

/// A request name. `cooperative` corresponds to the reserved scheme prefix;
/// only cooperative interests enter the cooperative routing path.
struct InterestName {
    bool cooperative = true;
    std::vector<ComponentId> sorted;  // non-empty component set
};

DataName make_data_name(std::vector<ComponentId> components);
InterestName make_interest(std::vector<ComponentId> components, bool cooperative = true);

/// true iff every component of the interest occurs in the data name.
bool matches(const DataName& data, const InterestName& interest);

/// true iff the interest's components are a subset of `circle_name`.
/// `circle_name` must be sorted.
bool name_covers(const std::vector<ComponentId>& circle_name, const InterestName& interest);

/// The global content catalog: every nameable data item, with a canonical
/// index for exact-name lookups.
class Catalog {
public:
    ItemId add(DataName name);  // throws ParseError on duplicate (set-equal) name

    const DataName& name(ItemId id) const { return items_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return items_.size(); }
    std::optional<ItemId> find(const std::vector<ComponentId>& sorted_components) const;

    const ComponentTable& components() const { return table_; }
    ComponentTable& components() { return table_; }

    std::string display(ItemId id) const;        // "Coursea/Java"
    std::string display_components(const std::vector<ComponentId>& comps) const;

private:
    ComponentTable table_;
    std::vector<DataName> items_;
    std::map<std::vector<ComponentId>, ItemId> index_;
};

/// Catalog file: one data name per line, components separated by '/',
/// '#' starts a comment. Throws ParseError with the offending line number.
Catalog load_catalog(const std::string& path);
Catalog parse_catalog(const std::string& text, const std::string& origin);
void save_catalog(const Catalog& catalog, const std::string& path);

}  // namespace sndn
