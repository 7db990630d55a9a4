#include "mapstab/documents.hpp"

#include <openssl/evp.h>

#include <array>
#include <sstream>

namespace mapstab {

using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw EngineError(ErrorCode::ConstructionFault, "SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

Json table_json(const HomotopyTable& table)
{
    Json out = Json::object();
    for (int k = 1; k <= table.window(); ++k) out[std::to_string(k)] = table.at(k);
    return out;
}

namespace {

Json component_json(const Component& n)
{
    Json out = Json::array();
    for (long ni : n) out.push_back(ni);
    return out;
}

Json header(const char* kind, const ModelSpec& spec)
{
    Json doc;
    doc["kind"] = kind;
    doc["engineVersion"] = engine_version;
    doc["inputs"] = Json{{"spec", to_json(spec)}};
    return doc;
}

Json check_json(const char* name, const VerificationReport& report)
{
    Json out{{"name", name}, {"passed", report.passed()}};
    if (const auto* f = report.first()) {
        out["failure"] = Json{{"check", f->check}, {"where", f->where}, {"detail", f->detail}};
    }
    return out;
}

Json check_json(const char* name, bool passed)
{
    return Json{{"name", name}, {"passed", passed}};
}

Json images_json(const CdgaMorphism& phi)
{
    Json out = Json::object();
    const auto& algebra = *phi.source.algebra;
    for (std::size_t g = 0; g < algebra.size(); ++g) out[algebra.generator(g).name] = to_string(phi.images[g]);
    return out;
}

Json les_rows(const LesReport& report)
{
    Json rows = Json::array();
    for (const auto& row : report.degrees) {
        rows.push_back(Json{{"degree", row.degree},
                            {"target", row.target},
                            {"free", row.free},
                            {"based", row.based},
                            {"rankEvaluation", row.rank_evaluation},
                            {"rankRestriction", row.rank_restriction},
                            {"middleExact", row.middle_exact},
                            {"connectingConsistent", row.connecting_consistent}});
    }
    return rows;
}

}  // namespace

Json table_document(const ModelSpec& spec, const Component& n, int window, bool based, const HomotopyTable& table)
{
    Json doc = header("table", spec);
    doc["inputs"]["component"] = component_json(n);
    doc["inputs"]["based"] = based;
    doc["window"] = window;
    doc["payload"] = Json{{"model", based ? "based" : "free"}, {"homotopy", table_json(table)}};
    return doc;
}

Json certificate_document(const ModelSpec& spec, const StabilityCertificate& cert)
{
    Json doc = header("certificate", spec);
    doc["inputs"]["component"] = component_json(cert.component);
    doc["inputs"]["factor"] = cert.factor;
    if (cert.conditional) {
        doc["inputs"]["kn"] = cert.conditional->kn;
        doc["inputs"]["kdn"] = cert.conditional->kdn;
    }
    doc["window"] = cert.window;
    doc["verdict"] = cert.valid() ? "VALID" : "INVALID";
    doc["scaledComponent"] = component_json(cert.scaled);
    Json flags = Json::array();
    if (cert.degenerate) flags.push_back("DEGENERATE");
    doc["flags"] = std::move(flags);

    Json checks = Json::array();
    checks.push_back(check_json("sigmaCompatibility", cert.sigma));
    checks.push_back(check_json("intertwiner", cert.intertwiner));
    checks.push_back(check_json("forwardChainMap", cert.forward_chain));
    checks.push_back(check_json("backwardChainMap", cert.backward_chain));
    checks.push_back(check_json("isoPair", cert.iso));
    checks.push_back(check_json("basedIsoPair", cert.based_iso));
    checks.push_back(check_json("freeTablesAgree", cert.free_n == cert.free_dn));
    checks.push_back(check_json("basedTablesAgree", cert.based_tables_agree));
    checks.push_back(check_json("lesExact", cert.les_n.exact && cert.les_dn.exact));
    doc["freeIso"] = Json{{"generatorImages",
                           {{"forward", images_json(cert.free_iso.forward)},
                            {"backward", images_json(cert.free_iso.backward)}}},
                          {"checks", std::move(checks)}};

    doc["tables"] = Json{{"free_n", table_json(cert.free_n)},
                         {"free_dn", table_json(cert.free_dn)},
                         {"based_n", table_json(cert.based_n)},
                         {"based_dn", table_json(cert.based_dn)},
                         {"target", table_json(cert.target)}};
    doc["les"] = Json{{"ranks", {{"n", les_rows(cert.les_n)}, {"dn", les_rows(cert.les_dn)}}},
                      {"exact", cert.les_n.exact && cert.les_dn.exact}};
    if (cert.conditional) {
        const auto& c = *cert.conditional;
        doc["conditional"] =
            Json{{"kn", c.kn},
                 {"kdn", c.kdn},
                 {"minDim", c.min_dim},
                 {"status", "conditional on external hypothesis"},
                 {"claim", "if the holomorphic components of degrees n and dn include into the continuous ones as "
                           "equivalences through dimensions kn and kdn, the degree-d cover induces a rational "
                           "homotopy equivalence of the holomorphic components through dimension " +
                               std::to_string(c.min_dim)}};
    }
    return doc;
}

namespace {

Json dimensions_json(const std::vector<std::size_t>& dims)
{
    Json out = Json::object();
    for (std::size_t k = 0; k < dims.size(); ++k) out[std::to_string(k + 1)] = dims[k];
    return out;
}

}  // namespace

Json classification_document(const ModelSpec& spec, const std::vector<Component>& components, int window,
                             const Classification& classification)
{
    Json doc = header("classification", spec);
    Json list = Json::array();
    for (const auto& n : components) list.push_back(component_json(n));
    doc["inputs"]["components"] = std::move(list);
    doc["window"] = window;
    Json cells = Json::array();
    for (const auto& cell : classification.cells) {
        Json members = Json::array();
        for (const auto& n : cell.members) members.push_back(component_json(n));
        cells.push_back(Json{{"members", std::move(members)},
                             {"representative", component_json(cell.members.front())},
                             {"homotopy", table_json(cell.table)},
                             {"cohomology", dimensions_json(cell.cohomology)}});
    }
    Json payload{{"cellCount", classification.cells.size()},
                 {"cells", std::move(cells)},
                 {"cellsDistinguished", classification.distinguished}};
    if (classification.two_type_bound) payload["atMostTwoTypes"] = *classification.two_type_bound;
    doc["payload"] = std::move(payload);
    return doc;
}

Json error_document(ErrorCode code, const std::string& message)
{
    return Json{{"kind", "error"}, {"engineVersion", engine_version}, {"code", error_code_name(code)}, {"message", message}};
}

std::string finalize_document(Json document)
{
    document.erase("contentHash");
    document["contentHash"] = sha256_hex(document.dump());
    return document.dump(2) + "\n";
}

namespace {

std::string table_line(const Json& table)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : table.items()) {
        if (!first) out += ", ";
        first = false;
        out += k + ":" + v.dump();
    }
    return out + "}";
}

std::string component_text(const Json& n)
{
    std::string out;
    for (const auto& v : n) {
        if (!out.empty()) out += ",";
        out += v.dump();
    }
    return out;
}

}  // namespace

std::string render_text(const Json& doc)
{
    std::ostringstream out;
    const std::string kind = doc.value("kind", "");
    if (kind == "error") {
        out << "error " << doc.at("code").get<std::string>() << ": " << doc.at("message").get<std::string>() << "\n";
        return out.str();
    }
    out << "target     " << doc.at("inputs").at("spec").at("name").get<std::string>() << "\n";
    out << "window     " << doc.at("window").dump() << "\n";
    if (kind == "table") {
        out << "component  " << component_text(doc.at("inputs").at("component")) << "\n";
        out << "model      " << doc.at("payload").at("model").get<std::string>() << "\n";
        out << "degree  dim\n";
        for (const auto& [k, v] : doc.at("payload").at("homotopy").items()) {
            out << k << std::string(8 - std::min<std::size_t>(k.size(), 7), ' ') << v.dump() << "\n";
        }
    } else if (kind == "certificate") {
        out << "component  " << component_text(doc.at("inputs").at("component")) << " -> "
            << component_text(doc.at("scaledComponent")) << " (factor " << doc.at("inputs").at("factor").dump() << ")\n";
        out << "verdict    " << doc.at("verdict").get<std::string>();
        for (const auto& f : doc.at("flags")) out << " " << f.get<std::string>();
        out << "\n";
        for (const auto& check : doc.at("freeIso").at("checks")) {
            out << "  " << (check.at("passed").get<bool>() ? "pass  " : "FAIL  ") << check.at("name").get<std::string>();
            if (check.contains("failure")) {
                out << "  (" << check.at("failure").at("where").get<std::string>() << ": "
                    << check.at("failure").at("detail").get<std::string>() << ")";
            }
            out << "\n";
        }
        for (const auto& [name, table] : doc.at("tables").items()) {
            out << name << std::string(11 - std::min<std::size_t>(name.size(), 10), ' ') << table_line(table) << "\n";
        }
        out << "forward    ";
        bool first = true;
        for (const auto& [g, image] : doc.at("freeIso").at("generatorImages").at("forward").items()) {
            out << (first ? "" : ", ") << g << " -> " << image.get<std::string>();
            first = false;
        }
        out << "\n";
        if (doc.contains("conditional")) {
            out << "conditional minDim " << doc.at("conditional").at("minDim").dump() << " ("
                << doc.at("conditional").at("status").get<std::string>() << ")\n";
        }
    } else if (kind == "classification") {
        const auto& payload = doc.at("payload");
        out << "cells      " << payload.at("cellCount").dump() << "\n";
        for (const auto& cell : payload.at("cells")) {
            out << "  {";
            bool first = true;
            for (const auto& n : cell.at("members")) {
                out << (first ? "" : "; ") << component_text(n);
                first = false;
            }
            out << "}  pi " << table_line(cell.at("homotopy")) << "  H " << table_line(cell.at("cohomology")) << "\n";
        }
        out << "separated  " << (payload.at("cellsDistinguished").get<bool>() ? "yes" : "no") << "\n";
        if (payload.contains("atMostTwoTypes")) {
            out << "two types  " << (payload.at("atMostTwoTypes").get<bool>() ? "yes" : "no") << "\n";
        }
    }
    out << "hash       " << doc.at("contentHash").get<std::string>() << "\n";
    return out.str();
}

}  // namespace mapstab
