#ifndef CDGA_CDGA_HPP
#define CDGA_CDGA_HPP

#include "cdga/rational.hpp"
#include "cdga/error.hpp"
#include "cdga/graded.hpp"
#include "cdga/linalg.hpp"
#include "cdga/dga.hpp"
#include "cdga/homology.hpp"
#include "cdga/linearization.hpp"
#include "cdga/path.hpp"
#include "cdga/model.hpp"
#include "cdga/contact/document.hpp"
#include "cdga/contact/contact.hpp"

#endif  // CDGA_CDGA_HPP
