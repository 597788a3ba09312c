// Writes the named groupoids as JSON fixtures into the given directory.
#include "hopfalgd/corpus.hpp"
#include "hopfalgd/io.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    for (const hopfalgd::NamedGroupoid& n : hopfalgd::named_fixtures()) {
        std::ofstream out(dir + '/' + n.name + ".json", std::ios::binary);
        out << hopfalgd::groupoid_to_json(n.groupoid);
        if (!out) {
            std::cerr << "cannot write " << n.name << '\n';
            return 1;
        }
    }
    return 0;
}
