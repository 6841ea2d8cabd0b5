class Sibling extends Base {
}
