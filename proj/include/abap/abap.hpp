#ifndef ABAP_ABAP_HPP
#define ABAP_ABAP_HPP

#include "abap/catalog.hpp"
#include "abap/class_tag.hpp"
#include "abap/conditions.hpp"
#include "abap/closure_oracle.hpp"
#include "abap/encodings.hpp"
#include "abap/extension.hpp"
#include "abap/io.hpp"
#include "abap/iso.hpp"
#include "abap/morphism.hpp"
#include "abap/structure.hpp"
#include "abap/term.hpp"
#include "abap/tower.hpp"
#include "abap/types.hpp"
#include "abap/validate.hpp"

#endif  // ABAP_ABAP_HPP
