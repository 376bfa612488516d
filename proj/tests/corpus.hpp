#ifndef TCPDL_TESTS_CORPUS_HPP
#define TCPDL_TESTS_CORPUS_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string corpus_path(const std::string& name) { return std::string(TCPDL_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_corpus(const std::string& name) { return read_file(corpus_path(name)); }

#endif
