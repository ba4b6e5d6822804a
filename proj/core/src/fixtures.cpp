#include "qdist/fixtures.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qdist {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidState("complex entries must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> parse_vector(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidState("vector payload must be a nonempty array");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(parse_complex(e));
    return out;
}

ComplexMatrix parse_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidState("matrix payload must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    if (cols == 0) throw InvalidState("matrix rows must be nonempty");
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw InvalidState("matrix rows must have equal lengths");
        for (int k = 0; k < cols; ++k) m(i, k) = parse_complex(row[static_cast<size_t>(k)]);
    }
    return m;
}

double parse_weight(const json& j) {
    if (!j.contains("weight")) return 1.0;
    if (!j["weight"].is_number()) throw InvalidState("weight must be a number");
    return j["weight"].get<double>();
}

FixtureOperation parse_operation(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw InvalidState("operation entries need a type tag");
    FixtureOperation op;
    op.type = j["type"].get<std::string>();
    op.weight = parse_weight(j);
    if (op.type == "unitary") {
        if (!j.contains("matrix")) throw InvalidState("unitary operations need a matrix payload");
        op.matrix = parse_matrix(j["matrix"]);
    } else if (op.type == "kraus") {
        if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty())
            throw InvalidState("kraus operations need a nonempty ops payload");
        for (const json& e : j["ops"]) op.ops.push_back(parse_matrix(e));
    } else if (op.type == "eb") {
        if (!j.contains("phis") || !j.contains("psis") || !j["phis"].is_array() || !j["psis"].is_array())
            throw InvalidState("eb operations need phis and psis payloads");
        for (const json& e : j["phis"]) op.eb.phis.push_back(parse_vector(e));
        for (const json& e : j["psis"]) op.eb.psis.push_back(parse_vector(e));
    } else {
        throw InvalidState("unknown operation type: " + op.type);
    }
    return op;
}

FixtureState parse_state(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw InvalidState("state entries need a type tag");
    FixtureState st;
    st.type = j["type"].get<std::string>();
    st.weight = parse_weight(j);
    if (st.type == "pure") {
        if (!j.contains("vec")) throw InvalidState("pure states need a vec payload");
        st.vec = parse_vector(j["vec"]);
    } else if (st.type == "density") {
        if (!j.contains("matrix")) throw InvalidState("density states need a matrix payload");
        st.matrix = parse_matrix(j["matrix"]);
    } else {
        throw InvalidState("unknown state type: " + st.type);
    }
    return st;
}

void emit_real(std::string& out, double x) { out += format_real(x); }

void emit_complex(std::string& out, Complex z) {
    out += '[';
    emit_real(out, z.real());
    out += ", ";
    emit_real(out, z.imag());
    out += ']';
}

void emit_vector(std::string& out, const std::vector<Complex>& v) {
    out += '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        emit_complex(out, v[i]);
    }
    out += ']';
}

void emit_matrix(std::string& out, const ComplexMatrix& m, const std::string& indent) {
    out += "[\n";
    for (int i = 0; i < m.rows(); ++i) {
        out += indent + "  [";
        for (int k = 0; k < m.cols(); ++k) {
            if (k) out += ", ";
            emit_complex(out, m(i, k));
        }
        out += ']';
        if (i + 1 < m.rows()) out += ',';
        out += '\n';
    }
    out += indent + ']';
}

std::string escape_string(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

FixtureFile parse_fixture(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidState(std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidState("fixture document must be an object");
    if (!j.contains("version") || !j["version"].is_string() || j["version"].get<std::string>() != kFixtureVersion)
        throw InvalidState(std::string("fixture version must be ") + kFixtureVersion);
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<int>() < 1)
        throw InvalidState("fixture needs a positive integer dimension");

    FixtureFile f;
    f.dimension = j["dimension"].get<int>();
    if (j.contains("comment")) {
        if (!j["comment"].is_string()) throw InvalidState("comment must be a string");
        f.comment = j["comment"].get<std::string>();
    }
    if (j.contains("operations")) {
        if (!j["operations"].is_array()) throw InvalidState("operations must be an array");
        for (const json& e : j["operations"]) f.operations.push_back(parse_operation(e));
    }
    if (j.contains("states")) {
        if (!j["states"].is_array()) throw InvalidState("states must be an array");
        for (const json& e : j["states"]) f.states.push_back(parse_state(e));
    }
    if (f.operations.empty() && f.states.empty())
        throw InvalidState("fixture holds neither operations nor states");
    return f;
}

FixtureFile load_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidState("cannot read fixture file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_fixture(buf.str());
}

std::string serialize_fixture(const FixtureFile& f) {
    std::string out;
    out += "{\n";
    out += "  \"version\": \"" + escape_string(f.version) + "\",\n";
    out += "  \"dimension\": " + std::to_string(f.dimension);
    if (!f.comment.empty()) out += ",\n  \"comment\": \"" + escape_string(f.comment) + "\"";
    if (!f.operations.empty()) {
        out += ",\n  \"operations\": [\n";
        for (size_t i = 0; i < f.operations.size(); ++i) {
            const FixtureOperation& op = f.operations[i];
            out += "    {\n";
            out += "      \"type\": \"" + escape_string(op.type) + "\",\n";
            out += "      \"weight\": ";
            emit_real(out, op.weight);
            if (op.type == "unitary") {
                out += ",\n      \"matrix\": ";
                emit_matrix(out, op.matrix, "      ");
            } else if (op.type == "kraus") {
                out += ",\n      \"ops\": [\n";
                for (size_t k = 0; k < op.ops.size(); ++k) {
                    out += "        ";
                    emit_matrix(out, op.ops[k], "        ");
                    if (k + 1 < op.ops.size()) out += ',';
                    out += '\n';
                }
                out += "      ]";
            } else if (op.type == "eb") {
                out += ",\n      \"phis\": [\n";
                for (size_t k = 0; k < op.eb.phis.size(); ++k) {
                    out += "        ";
                    emit_vector(out, op.eb.phis[k]);
                    if (k + 1 < op.eb.phis.size()) out += ',';
                    out += '\n';
                }
                out += "      ],\n      \"psis\": [\n";
                for (size_t k = 0; k < op.eb.psis.size(); ++k) {
                    out += "        ";
                    emit_vector(out, op.eb.psis[k]);
                    if (k + 1 < op.eb.psis.size()) out += ',';
                    out += '\n';
                }
                out += "      ]";
            }
            out += "\n    }";
            if (i + 1 < f.operations.size()) out += ',';
            out += '\n';
        }
        out += "  ]";
    }
    if (!f.states.empty()) {
        out += ",\n  \"states\": [\n";
        for (size_t i = 0; i < f.states.size(); ++i) {
            const FixtureState& st = f.states[i];
            out += "    {\n";
            out += "      \"type\": \"" + escape_string(st.type) + "\",\n";
            out += "      \"weight\": ";
            emit_real(out, st.weight);
            if (st.type == "pure") {
                out += ",\n      \"vec\": ";
                emit_vector(out, st.vec);
            } else {
                out += ",\n      \"matrix\": ";
                emit_matrix(out, st.matrix, "      ");
            }
            out += "\n    }";
            if (i + 1 < f.states.size()) out += ',';
            out += '\n';
        }
        out += "  ]";
    }
    out += "\n}\n";
    return out;
}

Channel to_channel(const FixtureOperation& op, int dimension) {
    if (op.type == "unitary") {
        if (op.matrix.rows() != dimension || op.matrix.cols() != dimension)
            throw DimensionMismatch("unitary payload does not match the fixture dimension");
        return Channel::unitary(op.matrix);
    }
    if (op.type == "kraus") {
        for (const ComplexMatrix& a : op.ops)
            if (a.cols() != dimension)
                throw DimensionMismatch("kraus payload does not match the fixture dimension");
        return Channel::kraus(op.ops);
    }
    if (op.type == "eb") {
        for (const std::vector<Complex>& psi : op.eb.psis)
            if (static_cast<int>(psi.size()) != dimension)
                throw DimensionMismatch("eb payload does not match the fixture dimension");
        return Channel::entanglement_breaking(op.eb);
    }
    throw InvalidState("unknown operation type: " + op.type);
}

std::vector<Channel> to_channels(const FixtureFile& f) {
    if (f.operations.empty()) throw InvalidState("fixture holds no operations");
    std::vector<Channel> out;
    out.reserve(f.operations.size());
    for (const FixtureOperation& op : f.operations) out.push_back(to_channel(op, f.dimension));
    return out;
}

ChannelEnsemble to_channel_ensemble(const FixtureFile& f) {
    std::vector<Channel> channels = to_channels(f);
    std::vector<double> w;
    w.reserve(f.operations.size());
    for (const FixtureOperation& op : f.operations) w.push_back(op.weight);
    return ChannelEnsemble(ProbVector(std::move(w)), std::move(channels));
}

SU2Ensemble to_su2_ensemble(const FixtureFile& f) {
    if (f.operations.empty()) throw InvalidState("fixture holds no operations");
    std::vector<ComplexMatrix> us;
    std::vector<double> w;
    for (const FixtureOperation& op : f.operations) {
        if (op.type != "unitary") throw InvalidChannel("SU(2) commands accept unitary operations only");
        us.push_back(op.matrix);
        w.push_back(op.weight);
    }
    return SU2Ensemble(ProbVector(std::move(w)), std::move(us));
}

StateEnsemble to_state_ensemble(const FixtureFile& f) {
    if (f.states.empty()) throw InvalidState("fixture holds no states");
    std::vector<DensityMatrix> states;
    std::vector<double> w;
    for (const FixtureState& st : f.states) {
        if (st.type == "pure") {
            if (static_cast<int>(st.vec.size()) != f.dimension)
                throw DimensionMismatch("pure state payload does not match the fixture dimension");
            states.push_back(DensityMatrix::from_pure(PureState(st.vec)));
        } else {
            if (st.matrix.rows() != f.dimension || st.matrix.cols() != f.dimension)
                throw DimensionMismatch("density payload does not match the fixture dimension");
            states.push_back(DensityMatrix(st.matrix));
        }
        w.push_back(st.weight);
    }
    return StateEnsemble(ProbVector(std::move(w)), std::move(states));
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace qdist
