#include "lstmcs/csv.hpp"

#include <fstream>
#include <sstream>

#include "lstmcs/errors.hpp"
#include "lstmcs/textfmt.hpp"

namespace lstmcs {

std::string result_csv(const std::vector<ResultRow>& rows) {
    std::string out = kResultHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.experiment;
        out += ',';
        out += r.solver;
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += format_double(r.m_over_n);
        out += ',';
        out += format_double(r.sigma);
        out += ',';
        out += std::to_string(r.trial);
        out += ',';
        out += format_double(r.nmse);
        out += ',';
        out += r.recovered ? '1' : '0';
        out += ',';
        out += format_double(r.wall_time_s);
        out += '\n';
    }
    return out;
}

std::string matrix_csv(const Matrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

Matrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& tok : split(line, ',')) row.push_back(parse_double_strict(trim(tok)));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("matrix csv: ragged row of " + std::to_string(row.size()) + " values");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix csv: no rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace lstmcs
