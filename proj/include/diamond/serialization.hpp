#ifndef DIAMOND_SERIALIZATION_HPP
#define DIAMOND_SERIALIZATION_HPP

#include <iosfwd>
#include <string>

#include "diamond/geometry.hpp"
#include "diamond/grid.hpp"
#include "diamond/params.hpp"

namespace diamond {

// {"j":[...],"n":[...]} or {"j_const":2,"n_const":3,"depth":8}
ParameterSequences params_from_json(const std::string& text);
std::string params_to_json(const ParameterSequences& seq);

// {"eta_num":1,"eta_den":6,"w":[2,1]} or {"eta_real":0.375,"w":[1]}
Address address_from_json(const std::string& text);
std::string address_to_json(const Address& addr);

std::string cell_label(const CellWord& cell);
CellWord cell_from_label(const ParameterSequences& seq, int level,
                         const std::string& label);

// first line "# {meta}", then "cell,node,theta,value" rows
void write_csv(const GridField& field, std::ostream& out);
GridField read_csv(std::istream& in);

}  // namespace diamond

#endif
