#include "chronograph/person.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "chronograph/error.hpp"

namespace chronograph {

using ordered_json = nlohmann::ordered_json;

const char* gender_name(Gender g) {
    switch (g) {
        case Gender::Male: return "male";
        case Gender::Female: return "female";
        default: return "unknown";
    }
}

std::optional<Gender> gender_from_name(std::string_view name) {
    if (name == "male") return Gender::Male;
    if (name == "female") return Gender::Female;
    if (name == "unknown") return Gender::Unknown;
    return std::nullopt;
}

std::string person_to_jsonl(const PersonRecord& p) {
    ordered_json j;
    j["title"] = p.title;
    j["lang"] = p.lang;
    if (p.lifespan) {
        j["birth"] = p.lifespan->birth;
        if (p.lifespan->death) {
            j["death"] = *p.lifespan->death;
        } else {
            j["death"] = nullptr;
        }
        j["approx"] = p.lifespan->approx;
    }
    j["undated"] = !p.lifespan.has_value();
    j["gender"] = gender_name(p.gender);
    j["categories"] = p.categories;
    ordered_json links = ordered_json::array();
    for (const auto& l : p.links) {
        links.push_back(ordered_json{{"target", l.target}, {"count", l.count}});
    }
    j["links"] = std::move(links);
    return j.dump();
}

PersonRecord person_from_jsonl(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Input, std::string("bad index record: ") + e.what());
    }
    PersonRecord p;
    p.title = j.at("title").get<std::string>();
    p.lang = j.value("lang", "");
    if (!j.value("undated", false) && j.contains("birth")) {
        Lifespan ls;
        ls.birth = j.at("birth").get<Year>();
        if (j.contains("death") && !j.at("death").is_null()) {
            ls.death = j.at("death").get<Year>();
        }
        ls.approx = j.value("approx", false);
        p.lifespan = ls;
    }
    if (auto g = gender_from_name(j.value("gender", "unknown"))) p.gender = *g;
    if (j.contains("categories")) {
        p.categories = j.at("categories").get<std::vector<std::string>>();
    }
    if (j.contains("links")) {
        for (const auto& l : j.at("links")) {
            p.links.push_back({l.at("target").get<std::string>(),
                               l.at("count").get<std::uint32_t>()});
        }
    }
    return p;
}

void write_index(const PeopleIndex& index, std::ostream& out) {
    for (const auto& [title, rec] : index) {
        out << person_to_jsonl(rec) << '\n';
    }
}

PeopleIndex read_index(std::istream& in) {
    PeopleIndex index;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PersonRecord p = person_from_jsonl(line);
        std::string key = p.title;
        index.insert_or_assign(std::move(key), std::move(p));
    }
    return index;
}

PeopleIndex read_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot open index file: " + path);
    return read_index(in);
}

}  // namespace chronograph
